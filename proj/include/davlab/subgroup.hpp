#pragma once

#include "davlab/element_set.hpp"
#include "davlab/group.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace davlab {

/// A subgroup of a FiniteGroup, stored as a membership bit-vector. The parent
/// group must outlive the subgroup.
class Subgroup {
public:
  Subgroup(const FiniteGroup& parent, ElementSet members);

  const FiniteGroup& parent() const { return *parent_; }
  const ElementSet& members() const { return members_; }
  std::size_t size() const { return size_; }
  bool contains(Element x) const { return members_.test(index(x)); }
  bool is_trivial() const { return size_ == 1; }
  std::vector<Element> elements() const;

  /// A generating set chosen greedily in index order; at most log2 |H| elements.
  std::vector<Element> generators() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

private:
  const FiniteGroup* parent_;
  ElementSet members_;
  std::size_t size_;
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);

/// Least subgroup containing gens (breadth-first closure).
Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> gens);
/// Least subgroup containing every element of the set.
Subgroup subgroup_closure(const FiniteGroup& g, const ElementSet& elements);

/// Least subgroup of g containing h and normalized by `by`.
Subgroup normal_closure(const FiniteGroup& g, const Subgroup& h, std::span<const Element> by);

/// [H, K], generated by all [h, k]. Computed as the normal closure in <H, K>
/// of the commutators of generating sets.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);

/// {h^k : h in H} as a set.
ElementSet power_set(const FiniteGroup& g, const Subgroup& h, std::int64_t k);
/// H^(k), the subgroup generated by all k-th powers of H.
Subgroup power_subgroup(const FiniteGroup& g, const Subgroup& h, std::int64_t k);

/// <H, K>.
Subgroup product_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);

bool is_subgroup_of(const Subgroup& k, const Subgroup& h);
/// Whether h is normalized by every element of g.
bool is_normal(const FiniteGroup& g, const Subgroup& h);
/// Whether k is normalized by every element of h.
bool is_normal_in(const Subgroup& k, const Subgroup& h);

/// |H| / |K|. Throws PreconditionError unless K is a normal subgroup of H.
std::size_t quotient_order(const Subgroup& h, const Subgroup& k);

Subgroup center(const FiniteGroup& g);

/// gamma_1 = G, gamma_{i+1} = [gamma_i, G], until the series stabilizes.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);

/// Nilpotency class, or nullopt when G is not nilpotent.
std::optional<int> nilpotency_class(const FiniteGroup& g);

} // namespace davlab
