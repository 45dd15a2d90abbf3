#include "davlab/jennings.hpp"

#include "davlab/errors.hpp"
#include "davlab/number_theory.hpp"

#include <algorithm>
#include <map>

namespace davlab {

namespace {

void require_p_group(const FiniteGroup& g, int p) {
  if (p < 2 || !is_prime(p) || !log_exact(static_cast<std::int64_t>(g.order()), p))
    throw NotPGroupError("group of order " + std::to_string(g.order()) + " is not a " + std::to_string(p) +
                         "-group");
}

bool is_class_two_family(Family f) {
  return f == Family::g1 || f == Family::g2 || f == Family::g3 || f == Family::g4;
}

// Closed-form chain length d accompanying the Loewy-length formula, where one exists.
std::optional<std::int64_t> stated_series_length(const GroupDescriptor& d) {
  if (d.family == Family::g4) return std::nullopt;
  const auto p = d.param("p");
  const auto a = d.param("alpha"), b = d.param("beta"), c = d.param("gamma");
  if (d.family == Family::g1 && a == b && b == c) return 2 * ipow(p, int(c - 1));
  return ipow(p, int(std::max(a, b) - 1));
}

} // namespace

std::vector<Subgroup> m_series(const FiniteGroup& g, int p) {
  require_p_group(g, p);
  const auto all = whole_group(g);
  std::vector<Subgroup> series{all};
  while (!series.back().is_trivial()) {
    const auto n = series.size() + 1;
    const auto& earlier = series[(n + p - 1) / p - 1];
    auto next = product_subgroup(g, commutator_subgroup(g, series.back(), all), power_subgroup(g, earlier, p));
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<int> jennings_exponents(std::span<const Subgroup> series, int p) {
  std::vector<int> e;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const auto ratio = series[i].size() / series[i + 1].size();
    const auto k = log_exact(static_cast<std::int64_t>(ratio), p);
    if (series[i].size() % series[i + 1].size() != 0 || !k)
      throw ConsistencyError("|M_" + std::to_string(i + 1) + "/M_" + std::to_string(i + 2) +
                             "| is not a power of " + std::to_string(p));
    e.push_back(*k);
  }
  return e;
}

std::int64_t loewy_length_from_exponents(std::span<const int> exponents, int p) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) sum += static_cast<std::int64_t>(i + 1) * exponents[i];
  return 1 + (p - 1) * sum;
}

std::int64_t loewy_length(const FiniteGroup& g, int p) {
  const auto series = m_series(g, p);
  return loewy_length_from_exponents(jennings_exponents(series, p), p);
}

std::vector<std::int64_t> loewy_polynomial(std::span<const int> exponents, int p) {
  std::vector<std::int64_t> poly{1};
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const auto step = i + 1;
    for (int rep = 0; rep < exponents[i]; ++rep) {
      std::vector<std::int64_t> next(poly.size() + (p - 1) * step, 0);
      for (std::size_t k = 0; k < poly.size(); ++k)
        for (int j = 0; j < p; ++j) next[k + j * step] += poly[k];
      poly = std::move(next);
    }
  }
  return poly;
}

JenningsData jennings(const FiniteGroup& g, int p) {
  JenningsData data;
  data.prime = p;
  data.series = m_series(g, p);
  data.exponents = jennings_exponents(data.series, p);
  data.coefficients = loewy_polynomial(data.exponents, p);
  data.loewy_length = loewy_length_from_exponents(data.exponents, p);
  return data;
}

std::int64_t loewy_formula(const GroupDescriptor& d) {
  switch (d.family) {
  case Family::g1:
  case Family::g2:
  case Family::g3: {
    const auto p = d.param("p");
    const auto pa = ipow(p, int(d.param("alpha"))), pb = ipow(p, int(d.param("beta")));
    if (d.family == Family::g1) return pa + pb + 2 * ipow(p, int(d.param("gamma"))) - 3;
    if (d.family == Family::g2) return pa + pb - 1;
    return pa + pb + 2 * ipow(p, int(d.param("sigma"))) - 3;
  }
  case Family::dihedral:
  case Family::dicyclic:
  case Family::semidihedral:
  case Family::modular2: {
    const auto r = two_power_exponent(d);
    const int min_r = (d.family == Family::semidihedral || d.family == Family::modular2) ? 4 : 3;
    if (!r || *r < min_r)
      throw NoFormulaError("no closed-form Loewy length for " + to_string(d) + " (needs order 2^r, r >= " +
                           std::to_string(min_r) + ")");
    return (std::int64_t{1} << (*r - 1)) + 1;
  }
  default: break;
  }
  throw NoFormulaError("no closed-form Loewy length for " + to_string(d));
}

std::vector<bool> elementary_abelian_quotients(const FiniteGroup& g, std::span<const Subgroup> series, int p) {
  std::vector<bool> out;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const auto& upper = series[i];
    const auto& lower = series[i + 1];
    bool ok = is_subgroup_of(lower, upper) && is_normal(g, upper);
    if (ok && !(upper == lower)) {
      const auto elems = upper.elements();
      for (auto h : elems) ok = ok && lower.contains(g.pow(h, p));
      for (std::size_t x = 0; ok && x < elems.size(); ++x)
        for (std::size_t y = x + 1; ok && y < elems.size(); ++y) ok = lower.contains(g.commutator(elems[x], elems[y]));
    }
    out.push_back(ok);
  }
  return out;
}

MSeriesReport mseries_closed_form_check(const FiniteGroup& g, const GroupDescriptor& d) {
  if (!is_class_two_family(d.family))
    throw WrongFamilyError("the class-two M-series prediction needs a g1..g4 descriptor, got " + to_string(d));
  const int p = static_cast<int>(d.param("p"));
  const auto series = m_series(g, p);
  const auto all = whole_group(g);
  const auto derived = commutator_subgroup(g, all, all);

  std::map<std::pair<int, int>, Subgroup> cache;
  // gamma_2^(p^s) G^(p^t)
  const auto predicted_for = [&](int s, int t) -> const Subgroup& {
    auto key = std::make_pair(s, t);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const auto sub = product_subgroup(g, power_subgroup(g, derived, ipow(p, s)), power_subgroup(g, all, ipow(p, t)));
      it = cache.emplace(key, sub).first;
    }
    return it->second;
  };

  MSeriesReport report;
  for (std::size_t i = 1; i <= series.size(); ++i) {
    const Subgroup* predicted = nullptr;
    if (i == 1) {
      predicted = &all;
    } else if (i == 2) {
      predicted = &predicted_for(0, 1);
    } else {
      for (int s = 1;; ++s) {
        const auto ps = static_cast<std::size_t>(ipow(p, s));
        const auto prev = static_cast<std::size_t>(ipow(p, s - 1));
        if (i >= 2 * prev + 1 && i <= ps) {
          predicted = &predicted_for(s, s);
          break;
        }
        if (i >= ps + 1 && i <= 2 * ps) {
          predicted = &predicted_for(s, s + 1);
          break;
        }
      }
    }
    const auto& computed = series[i - 1];
    report.entries.push_back({i, predicted->size(), computed.size(), *predicted == computed});
  }

  const auto computed_d = static_cast<std::int64_t>(series.size()) - 1;
  if (const auto stated = stated_series_length(d); stated && *stated != computed_d)
    report.note = "computed series length d = " + std::to_string(computed_d) + ", closed form gives d = " +
                  std::to_string(*stated);
  return report;
}

PowerReport power_generators_check(const FiniteGroup& g, const GroupDescriptor& d) {
  if (!is_class_two_family(d.family))
    throw WrongFamilyError("the power-subgroup identity is checked for g1..g4 descriptors, got " + to_string(d));
  const int p = static_cast<int>(d.param("p"));
  const auto all = whole_group(g);
  const auto a = g.generator("a"), b = g.generator("b");
  const auto ab = g.commutator(a, b);

  PowerReport report;
  for (int s = 1;; ++s) {
    const auto k = ipow(p, s);
    const auto generated = power_subgroup(g, all, k);
    const auto three = subgroup_closure(g, std::vector{g.pow(a, k), g.pow(b, k), g.pow(ab, k)});
    report.entries.push_back({s, generated.size(), three.size(), generated == three,
                              generated.members() == power_set(g, all, k)});
    if (generated.is_trivial()) break;
  }
  return report;
}

} // namespace davlab
