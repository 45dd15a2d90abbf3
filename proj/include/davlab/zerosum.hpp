#pragma once

#include "davlab/element_set.hpp"
#include "davlab/group.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace davlab {

/// Products of all nonempty index-increasing subsequences of a prefix.
struct ReachState {
  ElementSet products;
};

ReachState empty_reach_state(const FiniteGroup& g);
/// S -> S u S*x u {x}.
ReachState reach_extend(const FiniteGroup& g, const ReachState& s, Element x);
ReachState reach_of(const FiniteGroup& g, std::span<const Element> seq);

/// No nonempty index-increasing subsequence multiplies to 1.
bool is_ordered_free(const FiniteGroup& g, std::span<const Element> seq);

struct SearchOptions {
  /// Refuse groups above this order; nullopt uses the per-search default.
  std::optional<std::size_t> max_order;
  std::uint64_t max_states = 10'000'000;
  double max_seconds = 60.0;
  /// Root-partition workers; 0 reads DAVLAB_THREADS, defaulting to 1.
  unsigned threads = 0;
};

struct SearchResult {
  /// The invariant when exact, otherwise a lower bound.
  std::size_t value = 0;
  std::vector<Element> witness;
  std::uint64_t states_explored = 0;
  std::chrono::milliseconds elapsed{0};
  bool exact = true;
};

inline constexpr std::size_t kOrderedCap = 64;
inline constexpr std::size_t kUnorderedCap = 16;
inline constexpr std::size_t kEgCap = 8;
inline constexpr std::size_t kArrangementCap = 16;

/// D(G) by longest path over reach states. Witness ties break toward the
/// smallest element index at each step.
SearchResult davenport_ordered(const FiniteGroup& g, const SearchOptions& options = {});

/// ceil((|G|+1)/2); PreconditionError for cyclic groups.
std::size_t olson_white_bound(const FiniteGroup& g);

/// Some arrangement of all terms multiplies to 1.
bool is_product_one(const FiniteGroup& g, std::span<const Element> seq);
/// Product-one, and no proper nonempty index-increasing subsequence is.
bool is_minimal_product_one(const FiniteGroup& g, std::span<const Element> seq);
/// No nonempty sub-multiset has an arrangement multiplying to 1.
bool is_unordered_free(const FiniteGroup& g, std::span<const Element> seq);

/// D'(G) by depth-first search over multisets.
SearchResult davenport_unordered(const FiniteGroup& g, const SearchOptions& options = {});

/// Some index-increasing subsequence of exactly `length` terms multiplies to 1.
bool has_ordered_product_one_of_length(const FiniteGroup& g, std::span<const Element> seq, std::size_t length);
/// E(G) over reach states stratified by subsequence length.
SearchResult eg_invariant(const FiniteGroup& g, const SearchOptions& options = {});
/// witness followed by |G|-1 identities.
std::vector<Element> eg_lower_witness(const FiniteGroup& g, std::span<const Element> ordered_witness);

/// Throws PreconditionError unless A is nonempty and inside [1, exp(G)-1].
void validate_weight_set(const FiniteGroup& g, std::span<const int> weights);
bool is_weighted_free(const FiniteGroup& g, std::span<const Element> seq, std::span<const int> weights);
SearchResult davenport_weighted(const FiniteGroup& g, std::span<const int> weights,
                                const SearchOptions& options = {});

/// Least |A| with D_A(G) <= k; nullopt when no weight set works.
std::optional<std::size_t> min_weight_set(const FiniteGroup& g, std::size_t k, const SearchOptions& options = {});

} // namespace davlab
