// Longest-path searches over monotone bit-vector states: D(G), D_A(G), E(G).

#include "davlab/errors.hpp"
#include "davlab/zerosum.hpp"

#include "workers.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

namespace davlab {

namespace {

using Clock = std::chrono::steady_clock;

template <std::size_t W> using Bits = std::array<std::uint64_t, W>;

template <std::size_t W> struct BitsHash {
  std::size_t operator()(const Bits<W>& b) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : b) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

template <std::size_t W> bool test_bit(const Bits<W>& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
template <std::size_t W> void set_bit(Bits<W>& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

template <std::size_t W> std::size_t popcount(const Bits<W>& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

// dst |= {b * m : b in src[lo, lo+n)} placed at offset `to`.
template <std::size_t W>
void or_shifted_product(Bits<W>& dst, const Bits<W>& src, std::size_t lo, std::size_t n, std::size_t to,
                        std::span<const Element> column) {
  for (std::size_t w = lo >> 6; w < W && w * 64 < lo + n; ++w) {
    auto bits = src[w];
    while (bits) {
      std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      if (i < lo || i >= lo + n) continue;
      set_bit(dst, to + index(column[i - lo]));
    }
  }
}

struct SharedBudget {
  std::uint64_t max_states;
  Clock::time_point deadline;
  std::atomic<std::uint64_t> states{0};
  std::atomic<bool> stop{false};
};

struct Aborted {};

// Weighted reach extension: S u {s*g^a} u {g^a}; plain D uses A = {1}.
template <std::size_t W> class ReachPolicy {
public:
  ReachPolicy(const FiniteGroup& g, std::span<const int> weights) : g_(g), n_(g.order()), moves_(n_) {
    for (std::size_t x = 0; x < n_; ++x) {
      for (int a : weights) {
        auto m = g.pow(element(x), a);
        if (std::find(moves_[x].begin(), moves_[x].end(), m) == moves_[x].end()) moves_[x].push_back(m);
      }
    }
  }
  std::size_t order() const { return n_; }
  Bits<W> root() const { return {}; }
  bool extend(const Bits<W>& s, std::size_t x, Bits<W>& out) const {
    out = s;
    for (auto m : moves_[x]) {
      if (m == kIdentity) return false;
      set_bit(out, index(m));
      or_shifted_product(out, s, 0, n_, 0, g_.right_multiplication(m));
    }
    return !test_bit(out, 0);
  }
  // Free extensions grow the state strictly and never contain 1.
  std::size_t bound(const Bits<W>& s) const { return n_ - 1 - popcount(s); }

private:
  const FiniteGroup& g_;
  std::size_t n_;
  std::vector<std::vector<Element>> moves_;
};

// Stratified state: block l-1 holds products of subsequences of length l.
template <std::size_t W> class StratifiedPolicy {
public:
  explicit StratifiedPolicy(const FiniteGroup& g) : g_(g), n_(g.order()) {}
  std::size_t order() const { return n_; }
  Bits<W> root() const { return {}; }
  bool extend(const Bits<W>& s, std::size_t x, Bits<W>& out) const {
    out = s;
    auto column = g_.right_multiplication(element(x));
    for (std::size_t l = n_; l >= 2; --l) or_shifted_product(out, s, (l - 2) * n_, n_, (l - 1) * n_, column);
    set_bit(out, x);
    if (test_bit(out, (n_ - 1) * n_)) return false;
    if (out == s) throw ConsistencyError("stratified reach state failed to grow");
    return true;
  }
  std::size_t bound(const Bits<W>& s) const { return n_ * n_ - 1 - popcount(s); }

private:
  const FiniteGroup& g_;
  std::size_t n_;
};

template <std::size_t W, class Policy> class Searcher {
public:
  Searcher(const Policy& policy, SharedBudget& budget) : policy_(policy), budget_(budget) {}

  std::size_t value(const Bits<W>& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const std::size_t cap = policy_.bound(s);
    std::size_t best = 0;
    Bits<W> child;
    for (std::size_t x = 0; x < policy_.order() && best < cap; ++x) {
      if (!policy_.extend(s, x, child)) continue;
      path_.push_back(element(x));
      if (path_.size() > best_path_.size()) best_path_ = path_;
      best = std::max(best, 1 + value(child));
      path_.pop_back();
    }
    charge();
    memo_.emplace(s, static_cast<std::uint32_t>(best));
    return best;
  }

  /// Lexicographically first optimal continuation from s.
  void reconstruct(Bits<W> s, std::vector<Element>& out) {
    Bits<W> child;
    for (std::size_t target = value(s); target > 0; --target) {
      std::size_t x = 0;
      for (; x < policy_.order(); ++x)
        if (policy_.extend(s, x, child) && value(child) + 1 == target) break;
      if (x == policy_.order()) throw ConsistencyError("witness reconstruction lost the optimal path");
      out.push_back(element(x));
      s = child;
    }
  }

  void set_path(std::vector<Element> prefix) {
    path_ = std::move(prefix);
    if (path_.size() > best_path_.size()) best_path_ = path_;
  }
  const std::vector<Element>& best_path() const { return best_path_; }

private:
  void charge() {
    auto n = budget_.states.fetch_add(1, std::memory_order_relaxed) + 1;
    if (budget_.stop.load(std::memory_order_relaxed)) throw Aborted{};
    if (n > budget_.max_states || ((n & 1023) == 0 && Clock::now() > budget_.deadline)) {
      budget_.stop = true;
      throw Aborted{};
    }
  }

  const Policy& policy_;
  SharedBudget& budget_;
  std::unordered_map<Bits<W>, std::uint32_t, BitsHash<W>> memo_;
  std::vector<Element> path_;
  std::vector<Element> best_path_;
};

// Root moves are handed out in index order; each worker keeps its own memo.
template <std::size_t W, class Policy> SearchResult longest_free(const Policy& policy, const SearchOptions& options) {
  const auto start = Clock::now();
  SharedBudget budget{options.max_states,
                      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.max_seconds))};
  const std::size_t n = policy.order();
  const unsigned workers = std::max(1u, std::min<unsigned>(detail::resolve_threads(options.threads), n));

  std::vector<std::unique_ptr<Searcher<W, Policy>>> searchers;
  for (unsigned i = 0; i < workers; ++i) searchers.push_back(std::make_unique<Searcher<W, Policy>>(policy, budget));

  const Bits<W> root = policy.root();
  const std::size_t cap = policy.bound(root);
  std::vector<std::optional<std::size_t>> child_value(n);
  std::vector<unsigned> owner(n, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> saturated{false};
  bool aborted = false;
  std::mutex mu;

  detail::run_workers(workers, [&](unsigned id) {
    auto& searcher = *searchers[id];
    Bits<W> child;
    try {
      while (!saturated.load()) {
        std::size_t x = next.fetch_add(1);
        if (x >= n) break;
        if (!policy.extend(root, x, child)) continue;
        searcher.set_path({element(x)});
        auto v = searcher.value(child);
        std::lock_guard lock(mu);
        child_value[x] = v;
        owner[x] = id;
        if (v + 1 >= cap) saturated = true;
      }
    } catch (const Aborted&) {
      std::lock_guard lock(mu);
      aborted = true;
    }
  });

  SearchResult result;
  if (aborted) {
    for (auto& s : searchers)
      if (s->best_path().size() > result.witness.size()) result.witness = s->best_path();
    result.exact = false;
  } else {
    std::size_t best = 0;
    for (std::size_t x = 0; x < n; ++x)
      if (child_value[x]) best = std::max(best, *child_value[x] + 1);
    for (std::size_t x = 0; x < n && best > 0; ++x) {
      if (!child_value[x] || *child_value[x] + 1 != best) continue;
      Bits<W> child;
      policy.extend(root, x, child);
      result.witness.push_back(element(x));
      try {
        searchers[owner[x]]->reconstruct(child, result.witness);
      } catch (const Aborted&) {
        throw ConsistencyError("budget exhausted while replaying a completed search");
      }
      break;
    }
  }
  result.value = result.witness.size() + 1;
  result.states_explored = budget.states.load();
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return result;
}

template <template <std::size_t> class Policy, class... Args>
SearchResult dispatch(std::size_t bits, const SearchOptions& options, const FiniteGroup& g, Args&&... args) {
  const std::size_t words = (bits + 63) / 64;
  if (words <= 1) return longest_free<1>(Policy<1>(g, args...), options);
  if (words <= 2) return longest_free<2>(Policy<2>(g, args...), options);
  if (words <= 4) return longest_free<4>(Policy<4>(g, args...), options);
  if (words <= 8) return longest_free<8>(Policy<8>(g, args...), options);
  if (words <= 16) return longest_free<16>(Policy<16>(g, args...), options);
  if (words <= 32) return longest_free<32>(Policy<32>(g, args...), options);
  if (words <= 64) return longest_free<64>(Policy<64>(g, args...), options);
  throw GroupTooLargeError("state of " + std::to_string(bits) + " bits exceeds the search limit of 4096");
}

void check_cap(const FiniteGroup& g, const SearchOptions& options, std::size_t fallback, const char* what) {
  const auto cap = options.max_order.value_or(fallback);
  if (g.order() > cap)
    throw GroupTooLargeError(std::string(what) + " search is capped at order " + std::to_string(cap) + ", got " +
                             std::to_string(g.order()));
}

// x is ordered-free after seq iff 1 is never produced; stops at the first hit.
bool fold_free(const FiniteGroup& g, std::span<const Element> seq, std::span<const int> weights) {
  ElementSet s(g.order());
  for (auto x : seq) {
    ElementSet next = s;
    for (int a : weights) {
      auto m = g.pow(x, a);
      if (m == kIdentity) return false;
      next.set(index(m));
      auto column = g.right_multiplication(m);
      s.for_each([&](std::size_t i) { next.set(index(column[i])); });
    }
    if (next.test(0)) return false;
    s = std::move(next);
  }
  return true;
}

constexpr int kUnitWeight[] = {1};

} // namespace

ReachState empty_reach_state(const FiniteGroup& g) { return {ElementSet(g.order())}; }

ReachState reach_extend(const FiniteGroup& g, const ReachState& s, Element x) {
  ReachState out = s;
  auto column = g.right_multiplication(x);
  s.products.for_each([&](std::size_t i) { out.products.set(index(column[i])); });
  out.products.set(index(x));
  return out;
}

ReachState reach_of(const FiniteGroup& g, std::span<const Element> seq) {
  auto s = empty_reach_state(g);
  for (auto x : seq) s = reach_extend(g, s, x);
  return s;
}

bool is_ordered_free(const FiniteGroup& g, std::span<const Element> seq) { return fold_free(g, seq, kUnitWeight); }

SearchResult davenport_ordered(const FiniteGroup& g, const SearchOptions& options) {
  check_cap(g, options, kOrderedCap, "ordered Davenport");
  return dispatch<ReachPolicy>(g.order(), options, g, std::span<const int>(kUnitWeight));
}

std::size_t olson_white_bound(const FiniteGroup& g) {
  if (is_cyclic(g)) throw PreconditionError("the Olson-White bound applies only to non-cyclic groups");
  return (g.order() + 2) / 2;
}

void validate_weight_set(const FiniteGroup& g, std::span<const int> weights) {
  const auto e = static_cast<int>(exponent(g));
  if (weights.empty()) throw PreconditionError("weight set must be nonempty");
  for (int a : weights)
    if (a < 1 || a > e - 1)
      throw PreconditionError("weight " + std::to_string(a) + " outside [1, " + std::to_string(e - 1) + "]");
}

bool is_weighted_free(const FiniteGroup& g, std::span<const Element> seq, std::span<const int> weights) {
  validate_weight_set(g, weights);
  return fold_free(g, seq, weights);
}

SearchResult davenport_weighted(const FiniteGroup& g, std::span<const int> weights, const SearchOptions& options) {
  validate_weight_set(g, weights);
  check_cap(g, options, kOrderedCap, "weighted Davenport");
  return dispatch<ReachPolicy>(g.order(), options, g, weights);
}

bool has_ordered_product_one_of_length(const FiniteGroup& g, std::span<const Element> seq, std::size_t length) {
  if (length == 0) return true;
  // by_length[l] = products of index-increasing subsequences with l terms.
  std::vector<ElementSet> by_length(length + 1, ElementSet(g.order()));
  by_length[0].set(0);
  for (auto x : seq) {
    auto column = g.right_multiplication(x);
    for (std::size_t l = length; l >= 1; --l)
      by_length[l - 1].for_each([&](std::size_t i) { by_length[l].set(index(column[i])); });
  }
  return by_length[length].test(0);
}

SearchResult eg_invariant(const FiniteGroup& g, const SearchOptions& options) {
  check_cap(g, options, kEgCap, "E(G)");
  return dispatch<StratifiedPolicy>(g.order() * g.order(), options, g);
}

std::vector<Element> eg_lower_witness(const FiniteGroup& g, std::span<const Element> ordered_witness) {
  if (!is_ordered_free(g, ordered_witness)) throw PreconditionError("witness has an ordered product-one subsequence");
  std::vector<Element> out(ordered_witness.begin(), ordered_witness.end());
  out.insert(out.end(), g.order() - 1, kIdentity);
  return out;
}

std::optional<std::size_t> min_weight_set(const FiniteGroup& g, std::size_t k, const SearchOptions& options) {
  const auto e = static_cast<int>(exponent(g));
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (e < 2) throw PreconditionError("weight sets need exp(G) >= 2");
  const int universe = e - 1;
  for (int size = 1; size <= universe; ++size) {
    // Subsets of [1, e-1] with `size` elements, in colex order of bitmasks.
    for (std::uint64_t mask = (std::uint64_t{1} << size) - 1; mask < (std::uint64_t{1} << universe);) {
      std::vector<int> weights;
      for (int a = 0; a < universe; ++a)
        if (mask >> a & 1u) weights.push_back(a + 1);
      auto r = davenport_weighted(g, weights, options);
      if (!r.exact) throw BudgetError("weighted search budget exhausted in min_weight_set");
      if (r.value <= k) return static_cast<std::size_t>(size);
      auto low = mask & -mask;
      auto ripple = mask + low;
      mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
  }
  return std::nullopt;
}

} // namespace davlab
