#pragma once

// Brute-force oracles shared by the unit and acceptance suites.

#include "davlab/group.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace davlab::testing {

// Every nonempty index-increasing subsequence, each term raised to some weight.
inline std::set<std::size_t> naive_products(const FiniteGroup& g, const std::vector<Element>& seq,
                                            const std::vector<int>& weights) {
  std::set<std::size_t> out;
  const std::size_t k = seq.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) chosen.push_back(i);
    std::vector<std::size_t> pick(chosen.size(), 0);
    while (true) {
      Element p = kIdentity;
      for (std::size_t j = 0; j < chosen.size(); ++j) p = g.mul(p, g.pow(seq[chosen[j]], weights[pick[j]]));
      out.insert(index(p));
      std::size_t j = 0;
      while (j < pick.size() && ++pick[j] == weights.size()) pick[j++] = 0;
      if (j == pick.size()) break;
    }
  }
  return out;
}

// Brute force over all sequences; a prefix that already has a product-one
// subsequence is not extended since every extension has one too.
inline std::size_t naive_davenport(const FiniteGroup& g, const std::vector<int>& weights = {1}) {
  std::size_t longest = 0;
  std::vector<Element> seq;
  std::function<void()> rec = [&] {
    longest = std::max(longest, seq.size());
    for (std::size_t x = 0; x < g.order(); ++x) {
      seq.push_back(element(x));
      if (!naive_products(g, seq, weights).count(0)) rec();
      seq.pop_back();
    }
  };
  rec();
  return longest + 1;
}

inline bool naive_has_length(const FiniteGroup& g, const std::vector<Element>& seq, std::size_t length) {
  std::vector<bool> pick(seq.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(std::min(length, seq.size())), pick.end(), true);
  if (length > seq.size()) return false;
  do {
    Element p = kIdentity;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (pick[i]) p = g.mul(p, seq[i]);
    if (p == kIdentity) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

inline std::size_t naive_eg(const FiniteGroup& g) {
  std::size_t longest = 0;
  std::vector<Element> seq;
  std::function<void()> rec = [&] {
    longest = std::max(longest, seq.size());
    for (std::size_t x = 0; x < g.order(); ++x) {
      seq.push_back(element(x));
      if (!naive_has_length(g, seq, g.order())) rec();
      seq.pop_back();
    }
  };
  rec();
  return longest + 1;
}

} // namespace davlab::testing
