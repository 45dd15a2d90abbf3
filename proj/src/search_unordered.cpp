// Arrangement-insensitive product-one checks and the D'(G) search.

#include "davlab/errors.hpp"
#include "davlab/zerosum.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace davlab {

namespace {

using Clock = std::chrono::steady_clock;

// Multisets are keyed by their sorted element indices.
using Multiset = std::u16string;

struct Aborted {};

class ArrangementOracle {
public:
  explicit ArrangementOracle(const FiniteGroup& g, std::uint64_t max_states = UINT64_MAX,
                             Clock::time_point deadline = Clock::time_point::max())
      : g_(g), max_states_(max_states), deadline_(deadline) {}

  /// Products of all arrangements of m: A(m) = U_{x in supp m} A(m - x) * x.
  const ElementSet& products(const Multiset& m) {
    if (auto it = products_.find(m); it != products_.end()) return it->second;
    ElementSet out(g_.order());
    if (m.size() == 1) {
      out.set(m[0]);
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0 && m[i] == m[i - 1]) continue;
        auto column = g_.right_multiplication(static_cast<Element>(m[i]));
        products(without(m, i)).for_each([&](std::size_t p) { out.set(index(column[p])); });
      }
    }
    charge();
    return products_.emplace(m, std::move(out)).first->second;
  }

  /// No nonempty sub-multiset of m has a product-one arrangement.
  bool free(const Multiset& m) {
    if (m.empty()) return true;
    if (auto it = free_.find(m); it != free_.end()) return it->second;
    bool ok = !products(m).test(0);
    for (std::size_t i = 0; ok && i < m.size(); ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      ok = free(without(m, i));
    }
    charge();
    free_.emplace(m, ok);
    return ok;
  }

  std::uint64_t states() const { return states_; }

private:
  static Multiset without(const Multiset& m, std::size_t i) {
    Multiset out = m;
    out.erase(i, 1);
    return out;
  }

  void charge() {
    ++states_;
    if (states_ > max_states_ || ((states_ & 1023) == 0 && Clock::now() > deadline_)) throw Aborted{};
  }

  const FiniteGroup& g_;
  std::uint64_t max_states_;
  Clock::time_point deadline_;
  std::uint64_t states_ = 0;
  std::unordered_map<Multiset, ElementSet> products_;
  std::unordered_map<Multiset, bool> free_;
};

Multiset sorted_multiset(std::span<const Element> seq) {
  Multiset m;
  for (auto x : seq) m.push_back(static_cast<char16_t>(index(x)));
  std::sort(m.begin(), m.end());
  return m;
}

void check_length(std::span<const Element> seq) {
  if (seq.size() > kArrangementCap)
    throw BudgetError("arrangement search is limited to " + std::to_string(kArrangementCap) + " terms, got " +
                      std::to_string(seq.size()));
}

class UnorderedSearch {
public:
  UnorderedSearch(const FiniteGroup& g, ArrangementOracle& oracle) : n_(g.order()), oracle_(oracle) {}

  void run() { extend(Multiset{}, 1); }
  const Multiset& best() const { return best_; }

private:
  // Multisets are grown in nondecreasing index order; the identity never fits.
  void extend(const Multiset& m, std::size_t from) {
    for (std::size_t x = from; x < n_ && best_.size() + 1 < n_; ++x) {
      Multiset next = m;
      next.push_back(static_cast<char16_t>(x));
      if (!oracle_.free(next)) continue;
      if (next.size() > best_.size()) best_ = next;
      extend(next, x);
    }
  }

  std::size_t n_;
  ArrangementOracle& oracle_;
  Multiset best_;
};

} // namespace

bool is_product_one(const FiniteGroup& g, std::span<const Element> seq) {
  check_length(seq);
  if (seq.empty()) return true;
  ArrangementOracle oracle(g);
  return oracle.products(sorted_multiset(seq)).test(0);
}

bool is_minimal_product_one(const FiniteGroup& g, std::span<const Element> seq) {
  if (seq.empty() || !is_product_one(g, seq)) return false;
  const std::size_t full = (std::size_t{1} << seq.size()) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    Element p = kIdentity;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (mask >> i & 1u) p = g.mul(p, seq[i]);
    if (p == kIdentity) return false;
  }
  return true;
}

bool is_unordered_free(const FiniteGroup& g, std::span<const Element> seq) {
  check_length(seq);
  ArrangementOracle oracle(g);
  return oracle.free(sorted_multiset(seq));
}

SearchResult davenport_unordered(const FiniteGroup& g, const SearchOptions& options) {
  const auto cap = options.max_order.value_or(kUnorderedCap);
  if (g.order() > cap)
    throw GroupTooLargeError("unordered Davenport search is capped at order " + std::to_string(cap) + ", got " +
                             std::to_string(g.order()));
  const auto start = Clock::now();
  ArrangementOracle oracle(
      g, options.max_states,
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.max_seconds)));
  UnorderedSearch search(g, oracle);
  SearchResult result;
  try {
    search.run();
  } catch (const Aborted&) {
    result.exact = false;
  }
  for (auto x : search.best()) result.witness.push_back(static_cast<Element>(x));
  result.value = result.witness.size() + 1;
  result.states_explored = oracle.states();
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return result;
}

} // namespace davlab
