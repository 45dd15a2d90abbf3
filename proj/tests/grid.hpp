#pragma once

// Descriptor grids shared by the unit and acceptance suites.

#include "davlab/descriptor.hpp"
#include "davlab/number_theory.hpp"

#include <vector>

namespace davlab::testing {

/// D_{2^r}, Q_{2^r}, SD_{2^r} (r >= 4) and M_{2^r} (r >= 4) for 3 <= r <= max_r.
inline std::vector<GroupDescriptor> two_group_families(int max_r) {
  std::vector<GroupDescriptor> out;
  for (int r = 3; r <= max_r; ++r) {
    const auto n = std::int64_t{1} << r;
    out.push_back(dihedral_of_order(n));
    out.push_back(dicyclic_of_order(n));
    if (r >= 4) {
      out.push_back(semidihedral_of_order(n));
      out.push_back(modular2_of_order(n));
    }
  }
  return out;
}

/// Valid g1/g2/g3/g4 descriptors with the given primes and order <= max_order.
inline std::vector<GroupDescriptor> class_two_families(std::vector<int> primes, std::int64_t max_order) {
  std::vector<GroupDescriptor> out;
  const auto keep = [&](GroupDescriptor d) {
    try {
      validate_descriptor(d);
    } catch (...) {
      return;
    }
    if (expected_order(d) <= max_order) out.push_back(std::move(d));
  };
  for (int p : primes) {
    for (int a = 1; a <= 8; ++a)
      for (int b = 1; b <= 8; ++b)
        for (int c = 1; c <= 8; ++c) {
          keep(g1(p, a, b, c));
          keep(g2(p, a, b, c));
          for (int s = 0; s <= 8; ++s) {
            keep(g3(p, a, b, c, s));
            for (int rho = 0; rho <= 8; ++rho) keep(g4(p, a, b, c, rho, s));
          }
        }
  }
  return out;
}

} // namespace davlab::testing
