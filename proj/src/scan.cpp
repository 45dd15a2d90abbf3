#include "davlab/scan.hpp"

#include "davlab/errors.hpp"
#include "davlab/group.hpp"
#include "davlab/jennings.hpp"
#include "davlab/number_theory.hpp"
#include "davlab/witnesses.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <set>

namespace davlab {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

const std::set<std::string, std::less<>> kFamilies{"c", "d", "q", "sd", "m2", "g1", "g2", "g3", "g4"};
const std::set<std::string, std::less<>> kRangeKeys{"order", "p", "alpha", "beta", "gamma", "sigma", "rho"};

std::int64_t parse_int(std::string_view s, std::string_view context) {
  if (s.empty()) throw ParseError("empty number in " + std::string(context));
  std::int64_t v = 0;
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '-') negative = true, ++i;
  if (i == s.size()) throw ParseError("bad number in " + std::string(context));
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad number in " + std::string(context));
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000'000) throw ParseError("number too large in " + std::string(context));
  }
  return negative ? -v : v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

class GridBuilder {
public:
  explicit GridBuilder(ScanGrid& grid) : grid_(grid) {}

  void offer(const std::function<GroupDescriptor()>& make) {
    GroupDescriptor d;
    try {
      d = make();
      validate_descriptor(d);
    } catch (const ParseError&) {
      return;
    } catch (const ConstraintError&) {
      return;
    }
    if (expected_order(d) > kScanMaxOrder) {
      ++grid_.skipped_over_cap;
      return;
    }
    if (!seen_.insert(to_string(d)).second) return;
    grid_.descriptors.push_back(std::move(d));
    if (grid_.descriptors.size() > kScanMaxRows)
      throw GridTooLargeError("scan grid exceeds " + std::to_string(kScanMaxRows) + " rows");
  }

private:
  ScanGrid& grid_;
  std::set<std::string> seen_;
};

// Parameter loops are capped before any descriptor is formed.
void check_loop_size(std::initializer_list<ParamRange> ranges) {
  double total = 1;
  for (const auto& r : ranges) total *= static_cast<double>(std::max<std::int64_t>(0, r.hi - r.lo + 1));
  if (total > 1e6) throw GridTooLargeError("scan parameter ranges span more than 10^6 tuples");
}

} // namespace

std::string_view status_name(ScanStatus s) {
  switch (s) {
  case ScanStatus::confirmed: return "CONFIRMED";
  case ScanStatus::consistent: return "CONSISTENT";
  case ScanStatus::refuted: return "REFUTED";
  }
  return "?";
}

std::map<std::string, ParamRange> parse_param_ranges(std::string_view text) {
  std::map<std::string, ParamRange> out;
  if (text.empty()) return out;
  for (auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected name=lo..hi in --param-ranges, got '" + std::string(item) + "'");
    const std::string name(item.substr(0, eq));
    if (!kRangeKeys.count(name))
      throw ParseError("unknown range parameter '" + name + "' (order, p, alpha, beta, gamma, sigma, rho)");
    const auto spec = item.substr(eq + 1);
    ParamRange r;
    if (const auto dots = spec.find(".."); dots != std::string_view::npos) {
      r.lo = parse_int(spec.substr(0, dots), item);
      r.hi = parse_int(spec.substr(dots + 2), item);
    } else {
      r.lo = r.hi = parse_int(spec, item);
    }
    if (r.lo > r.hi) throw ParseError("empty range in '" + std::string(item) + "'");
    out[name] = r;
  }
  return out;
}

std::vector<std::string> parse_family_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto item : split(text, ',')) {
    if (!kFamilies.count(item))
      throw ParseError("unknown family '" + std::string(item) + "' (c, d, q, sd, m2, g1, g2, g3, g4)");
    out.emplace_back(item);
  }
  return out;
}

ScanGrid scan_grid(const std::vector<std::string>& families, const std::map<std::string, ParamRange>& ranges) {
  ScanGrid grid;
  GridBuilder builder(grid);
  const auto range = [&](const std::string& key, ParamRange fallback) {
    const auto it = ranges.find(key);
    return it == ranges.end() ? fallback : it->second;
  };
  const auto p = range("p", {3, 3}), alpha = range("alpha", {1, 3}), beta = range("beta", {1, 3}),
             gamma = range("gamma", {1, 1}), sigma = range("sigma", {1, 1}), rho = range("rho", {0, 3});
  for (const auto& f : families) {
    if (!kFamilies.count(f)) throw ParseError("unknown family '" + f + "'");
    if (f == "c" || f == "d" || f == "q" || f == "sd" || f == "m2") {
      const auto order = range("order", f == "c" ? ParamRange{1, 16} : ParamRange{8, 32});
      check_loop_size({order});
      for (auto n = order.lo; n <= order.hi; ++n) {
        if (f == "c") builder.offer([n] { return cyclic(n); });
        if (f == "d") builder.offer([n] { return dihedral_of_order(n); });
        if (f == "q") builder.offer([n] { return dicyclic_of_order(n); });
        if (f == "sd") builder.offer([n] { return semidihedral_of_order(n); });
        if (f == "m2") builder.offer([n] { return modular2_of_order(n); });
      }
      continue;
    }
    if (f == "g4") check_loop_size({p, alpha, beta, gamma, rho, sigma});
    else if (f == "g3") check_loop_size({p, alpha, beta, gamma, sigma});
    else check_loop_size({p, alpha, beta, gamma});
    for (auto pp = p.lo; pp <= p.hi; ++pp)
      for (auto a = alpha.lo; a <= alpha.hi; ++a)
        for (auto b = beta.lo; b <= beta.hi; ++b)
          for (auto c = gamma.lo; c <= gamma.hi; ++c) {
            const int P = int(pp), A = int(a), B = int(b), C = int(c);
            if (f == "g1") builder.offer([=] { return g1(P, A, B, C); });
            if (f == "g2") builder.offer([=] { return g2(P, A, B, C); });
            for (auto s = sigma.lo; s <= sigma.hi; ++s) {
              const int S = int(s);
              if (f == "g3") builder.offer([=] { return g3(P, A, B, C, S); });
              if (f == "g4")
                for (auto r = rho.lo; r <= rho.hi; ++r) {
                  const int R = int(r);
                  builder.offer([=] { return g4(P, A, B, C, R, S); });
                }
            }
          }
  }
  return grid;
}

ScanGrid default_scan_grid() {
  ScanGrid grid;
  const auto append = [&](const ScanGrid& part) {
    grid.descriptors.insert(grid.descriptors.end(), part.descriptors.begin(), part.descriptors.end());
  };
  append(scan_grid({"d", "q", "sd", "m2"}, {{"order", {8, 8}}}));
  append(scan_grid({"d", "q", "sd", "m2"}, {{"order", {16, 16}}}));
  append(scan_grid({"d", "q", "sd", "m2"}, {{"order", {32, 32}}}));
  for (std::int64_t n = 12; n <= 64; n += 4)
    if (!log_exact(n, 2)) append(scan_grid({"q"}, {{"order", {n, n}}}));
  for (std::int64_t n = 24; n <= 64; n += 8)
    if (!log_exact(n, 2)) append(scan_grid({"sd"}, {{"order", {n, n}}}));
  const std::map<std::string, ParamRange> base{{"p", {3, 5}}, {"alpha", {1, 6}}, {"beta", {1, 6}}};
  auto g1_ranges = base, g2_ranges = base, g3_ranges = base;
  g1_ranges["gamma"] = {1, 1};
  g2_ranges["gamma"] = {1, 6};
  g3_ranges["gamma"] = {1, 6};
  g3_ranges["sigma"] = {1, 1};
  append(scan_grid({"g1"}, g1_ranges));
  append(scan_grid({"g2"}, g2_ranges));
  append(scan_grid({"g3"}, g3_ranges));
  return grid;
}

bool descriptor_is_cyclic(const GroupDescriptor& d) {
  switch (d.family) {
  case Family::cyclic: return true;
  case Family::abelian_product: {
    std::int64_t lcm = 1, order = 1;
    for (auto f : d.factors) {
      lcm = std::lcm(lcm, f);
      order *= f;
    }
    return lcm == order;
  }
  default: return false;
  }
}

std::optional<int> default_witness_theorem(const GroupDescriptor& d) {
  const bool two = two_power_exponent(d).has_value() && expected_order(d) >= 8;
  switch (d.family) {
  case Family::dihedral:
  case Family::modular2: return two ? std::optional<int>(7) : std::nullopt;
  case Family::dicyclic:
  case Family::semidihedral: return two ? 7 : 1;
  case Family::g1:
  case Family::g2:
  case Family::g3: return 6;
  default: return std::nullopt;
  }
}

ScanStatus scan_verdict(const ScanRow& row) {
  if (row.upper && row.lower > *row.upper) return ScanStatus::refuted;
  if (row.loewy && row.exact_value && static_cast<std::int64_t>(*row.exact_value) != *row.loewy)
    return ScanStatus::refuted;
  if (row.upper && row.lower == *row.upper) return ScanStatus::confirmed;
  return ScanStatus::consistent;
}

ScanRow scan_row(const GroupDescriptor& d, const ScanOptions& options) {
  ScanRow row;
  row.descriptor = to_string(d);
  row.order = expected_order(d);
  bool computed = false;
  std::optional<FiniteGroup> group;
  const auto built = [&]() -> const FiniteGroup& {
    if (!group) group.emplace(build(d));
    return *group;
  };
  // Inexact records are never served; the search reruns instead.
  const auto lookup = [&](const char* invariant) -> std::optional<ResultRecord> {
    if (!options.cache) return std::nullopt;
    auto r = options.cache->get(row.descriptor, invariant);
    if (r && r->exact) return r;
    return std::nullopt;
  };
  const auto store = [&](const ResultRecord& r) {
    computed = true;
    if (options.cache) options.cache->put(r);
  };

  const auto prime = descriptor_prime(d);
  if (prime) {
    if (auto r = lookup("L")) {
      row.loewy = r->value.get<std::int64_t>();
    } else {
      const auto t0 = Clock::now();
      row.loewy = loewy_length(built(), *prime);
      store(make_record(row.descriptor, "L", *row.loewy, true, ms_since(t0)));
    }
    row.upper = static_cast<std::size_t>(*row.loewy);
    row.upper_source = "loewy";
  } else if (descriptor_is_cyclic(d)) {
    row.upper = static_cast<std::size_t>(row.order);
    row.upper_source = "cyclic";
  } else {
    row.upper = static_cast<std::size_t>((row.order + 2) / 2);
    row.upper_source = "olson_white";
  }

  if (const auto theorem = default_witness_theorem(d)) {
    auto rec = lookup("witness_check");
    if (!rec) {
      try {
        const auto t0 = Clock::now();
        const auto& g = built();
        WitnessOptions explore;
        explore.unverified_explore = true;
        const auto seq = witness_for(*theorem, g, d, explore).sequence();
        rec = make_record(row.descriptor, "witness_check", is_ordered_free(g, seq), true, ms_since(t0));
        rec->witness = element_labels(g, seq);
        store(*rec);
      } catch (const WrongFamilyError& e) {
        row.notes.push_back(e.what());
      } catch (const PreconditionError& e) {
        row.notes.push_back(e.what());
      }
    }
    if (rec) {
      const bool exploratory = (d.family == Family::g1 && d.param("gamma") > 1) ||
                               (d.family == Family::g3 && d.param("sigma") > 1);
      if (exploratory) row.notes.push_back("witness outside the proven scope");
      if (rec->value.get<bool>() && rec->witness) {
        row.lower = rec->witness->size() + 1;
        row.lower_source = "witness_theorem" + std::to_string(*theorem);
      } else {
        row.notes.push_back("witness is not ordered-free");
      }
    }
  }

  if ((!row.upper || row.lower < *row.upper) && row.order <= static_cast<std::int64_t>(kScanSearchCap)) {
    auto rec = lookup("D");
    if (!rec) {
      const auto& g = built();
      const auto result = davenport_ordered(g, options.search);
      rec = make_record(row.descriptor, "D", result.value, result.exact, result.elapsed.count());
      rec->witness = element_labels(g, result.witness);
      store(*rec);
    }
    const auto v = rec->value.get<std::size_t>();
    if (rec->exact) row.exact_value = v;
    if (v > row.lower) {
      row.lower = v;
      row.lower_source = rec->exact ? "search" : "partial_search";
    }
  }

  row.cached = !computed;
  row.status = scan_verdict(row);
  return row;
}

std::vector<ScanRow> scan(const std::vector<GroupDescriptor>& grid, const ScanOptions& options) {
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (const auto& d : grid) rows.push_back(scan_row(d, options));
  return rows;
}

} // namespace davlab
