#pragma once

#include "davlab/descriptor.hpp"
#include "davlab/group.hpp"

#include <string>
#include <vector>

namespace davlab {

struct RelationCheck {
  std::string relation;
  bool holds = false;
};

struct PresentationReport {
  std::vector<RelationCheck> relations;

  bool all_pass() const {
    for (const auto& r : relations)
      if (!r.holds) return false;
    return true;
  }
};

/// Evaluates every defining relation of the descriptor's family on the table,
/// together with the generator orders, the group order and generation.
PresentationReport verify_presentation(const FiniteGroup& g, const GroupDescriptor& d);

} // namespace davlab
