#include "davlab/cache.hpp"
#include "davlab/descriptor.hpp"
#include "davlab/errors.hpp"
#include "davlab/group.hpp"
#include "davlab/jennings.hpp"
#include "davlab/scan.hpp"
#include "davlab/subgroup.hpp"
#include "davlab/version.hpp"
#include "davlab/witnesses.hpp"
#include "davlab/zerosum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace davlab;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitAssertion = 2;

constexpr const char* kGrammar =
    "descriptors: c[n] ab[n1,n2,...] d[2n] q[4n] sd[8n] m2[2^r] g1[p,alpha,beta,gamma] g2[p,alpha,beta,gamma] "
    "g3[p,alpha,beta,gamma,sigma] g4[p,alpha,beta,gamma,rho,sigma]";

using Clock = std::chrono::steady_clock;

struct Flags {
  std::string descriptor;
  bool json = false;
  bool csv = false;
  std::string method = "direct";
  std::string variant = "ordered";
  std::vector<int> weights;
  std::uint64_t budget_states = SearchOptions{}.max_states;
  double budget_seconds = SearchOptions{}.max_seconds;
  unsigned threads = 0;
  std::optional<std::string> cache_path;
  bool no_cache = false;
  bool unverified_explore = false;
  int theorem = 0;
  bool verify = false;
  std::string families;
  std::string param_ranges;
};

/// Shared state of one invocation.
class Run {
public:
  explicit Run(const Flags& flags) : flags_(flags), start_(Clock::now()) {}

  ResultCache* cache() {
    if (flags_.no_cache) return nullptr;
    if (!cache_) {
      cache_ = std::make_unique<ResultCache>(resolve_cache_path(flags_.cache_path));
      for (const auto& w : cache_->warnings()) std::cerr << "warning: " << w << "\n";
    }
    return cache_.get();
  }

  /// Exact records only; inexact searches are rerun.
  std::optional<ResultRecord> lookup(const std::string& descriptor, const std::string& invariant,
                                     const std::optional<std::vector<int>>& weights = std::nullopt) {
    auto* c = cache();
    if (!c) return std::nullopt;
    auto r = c->get(descriptor, invariant, weights);
    if (r && r->exact) return r;
    return std::nullopt;
  }

  void store(const ResultRecord& r) {
    if (auto* c = cache()) c->put(r);
  }

  SearchOptions search_options() const {
    SearchOptions o;
    o.max_states = flags_.budget_states;
    o.max_seconds = flags_.budget_seconds;
    o.threads = flags_.threads;
    return o;
  }

  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
  }

  json document(const std::string& descriptor, const std::string& invariant, json value, bool exact, bool cached) const {
    return json{{"descriptor", descriptor}, {"invariant", invariant}, {"value", std::move(value)},
                {"exact", exact},           {"elapsed_ms", elapsed_ms()}, {"version", kToolVersion},
                {"cached", cached}};
  }

  const Flags& flags() const { return flags_; }

private:
  const Flags& flags_;
  Clock::time_point start_;
  std::unique_ptr<ResultCache> cache_;
};

std::int64_t since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

GroupDescriptor parse_checked(const std::string& text) {
  auto d = parse_descriptor(text);
  validate_descriptor(d);
  return d;
}

int require_prime(const GroupDescriptor& d, const FiniteGroup* g) {
  if (auto p = descriptor_prime(d)) return *p;
  if (g && g->prime()) return *g->prime();
  throw NotPGroupError(to_string(d) + " is not a p-group");
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? "," : "") << items[i];
  return out.str();
}

void emit(const Flags& flags, const json& doc, const std::string& text) {
  if (flags.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_info(Run& run) {
  const auto d = parse_checked(run.flags().descriptor);
  const auto g = build(d);
  const auto whole = whole_group(g);
  const auto derived = commutator_subgroup(g, whole, whole);
  const auto cls = nilpotency_class(g);
  json gens = json::object();
  std::ostringstream text;
  text << "group " << to_string(d) << "\n"
       << "order " << g.order() << "\n"
       << "exponent " << exponent(g) << "\n"
       << "center " << center(g).size() << "\n"
       << "gamma_2 " << derived.size() << "\n"
       << "class " << (cls ? std::to_string(*cls) : std::string("not nilpotent")) << "\n";
  for (const auto& ng : g.generators()) {
    gens[ng.name] = element_order(g, ng.element);
    text << "o(" << ng.name << ") " << element_order(g, ng.element) << "\n";
  }
  json value{{"order", g.order()},
             {"exponent", exponent(g)},
             {"center_order", center(g).size()},
             {"gamma2_order", derived.size()},
             {"nilpotency_class", cls ? json(*cls) : json(nullptr)},
             {"generator_orders", gens}};
  emit(run.flags(), run.document(to_string(d), "info", value, true, false), text.str());
  return 0;
}

int cmd_loewy(Run& run) {
  const auto& method = run.flags().method;
  const auto d = parse_checked(run.flags().descriptor);
  const auto name = to_string(d);
  std::ostringstream text;

  if (method == "formula") {
    bool cached = false;
    std::int64_t value;
    if (auto r = run.lookup(name, "L_formula")) {
      value = r->value.get<std::int64_t>();
      cached = true;
    } else {
      const auto t0 = Clock::now();
      value = loewy_formula(d);
      run.store(make_record(name, "L_formula", value, true, since(t0)));
    }
    text << "L(" << name << ") = " << value << " (formula)" << (cached ? " [cached]" : "") << "\n";
    emit(run.flags(), run.document(name, "L_formula", value, true, cached), text.str());
    return 0;
  }

  if (method == "direct") {
    if (auto r = run.lookup(name, "L")) {
      const auto value = r->value.get<std::int64_t>();
      text << "L(" << name << ") = " << value << " (direct) [cached]\n";
      emit(run.flags(), run.document(name, "L", value, true, true), text.str());
      return 0;
    }
  }

  // direct without a cache hit, or both: run the recursion for the full data.
  const int p = require_prime(d, nullptr);
  const auto t0 = Clock::now();
  const auto g = build(d);
  const auto data = jennings(g, p);
  run.store(make_record(name, "L", data.loewy_length, true, since(t0)));
  std::vector<std::size_t> sizes;
  for (const auto& m : data.series) sizes.push_back(m.size());
  json details{{"prime", p},
               {"series_sizes", sizes},
               {"exponents", data.exponents},
               {"coefficients", data.coefficients}};
  text << "L(" << name << ") = " << data.loewy_length << " (direct)\n";
  int status = 0;
  if (method == "both") {
    const auto formula = loewy_formula(d);
    run.store(make_record(name, "L_formula", formula, true, 0));
    const bool agree = formula == data.loewy_length;
    details["formula"] = formula;
    details["agree"] = agree;
    text << "L(" << name << ") = " << formula << " (formula)\n"
         << (agree ? "agree: " : "DISAGREE: ") << data.loewy_length << (agree ? " = " : " != ") << formula << "\n";
    if (!agree) status = kExitAssertion;
  }
  text << "M-series sizes: " << join_numbers(sizes) << "\n"
       << "c_k: " << join_numbers(data.coefficients) << "\n";
  auto doc = run.document(name, "L", data.loewy_length, true, false);
  doc["details"] = details;
  emit(run.flags(), doc, text.str());
  return status;
}

int cmd_davenport(Run& run) {
  const auto& flags = run.flags();
  const auto d = parse_checked(flags.descriptor);
  const auto name = to_string(d);
  std::string invariant;
  std::optional<std::vector<int>> weights;
  if (flags.variant == "ordered") invariant = "D";
  else if (flags.variant == "unordered") invariant = "Dprime";
  else if (flags.variant == "E") invariant = "E";
  else if (flags.variant == "weighted") {
    invariant = "DA";
    if (flags.weights.empty()) throw PreconditionError("--variant=weighted needs --weights, e.g. --weights=1,4");
    weights = flags.weights;
  } else {
    throw PreconditionError("unknown variant '" + flags.variant + "' (ordered, unordered, E, weighted)");
  }

  std::ostringstream text;
  json details = json::object();
  ResultRecord record;
  bool cached = false;
  if (auto r = run.lookup(name, invariant, weights)) {
    record = *r;
    cached = true;
  } else {
    const auto g = build(d);
    const auto options = run.search_options();
    SearchResult result;
    if (invariant == "D") result = davenport_ordered(g, options);
    else if (invariant == "Dprime") result = davenport_unordered(g, options);
    else if (invariant == "E") result = eg_invariant(g, options);
    else result = davenport_weighted(g, *weights, options);
    record = make_record(name, invariant, result.value, result.exact, result.elapsed.count());
    record.weight_set = weights;
    record.witness = element_labels(g, result.witness);
    run.store(record);
    details["states_explored"] = result.states_explored;
  }

  const auto value = record.value.get<std::size_t>();
  text << invariant << "(" << name << ")" << (weights ? "[A=" + join_numbers(*weights) + "]" : "") << " "
       << (record.exact ? "= " : ">= ") << value << (record.exact ? " (exact)" : " (budget exhausted, lower bound)")
       << (cached ? " [cached]" : "") << "\n";
  if (record.witness) {
    const char* what = invariant == "E" ? "free of length-|G| product-one subsequences" : "free";
    text << "witness (" << what << "): " << (record.witness->empty() ? "(empty)" : join(*record.witness)) << "\n";
  }
  if (details.contains("states_explored")) text << "states explored: " << details["states_explored"] << "\n";
  auto doc = run.document(name, invariant, value, record.exact, cached);
  if (record.witness) doc["witness"] = *record.witness;
  if (weights) details["weights"] = *weights;
  if (!details.empty()) doc["details"] = details;
  emit(flags, doc, text.str());
  return 0;
}

bool exploratory(const GroupDescriptor& d) {
  return (d.family == Family::g1 && d.param("gamma") > 1) || (d.family == Family::g3 && d.param("sigma") > 1);
}

/// Cached congruence oracle verdict for a g1/g3 descriptor.
bool oracle_verdict(Run& run, const GroupDescriptor& d, bool& cached) {
  const auto name = to_string(d);
  if (auto r = run.lookup(name, "oracle_check")) {
    cached = true;
    return r->value.get<bool>();
  }
  cached = false;
  const auto t0 = Clock::now();
  const bool ok = congruence_oracle(congruence_system(d));
  run.store(make_record(name, "oracle_check", ok, true, since(t0)));
  return ok;
}

int cmd_witness(Run& run) {
  const auto& flags = run.flags();
  const auto d = parse_checked(flags.descriptor);
  const auto name = to_string(d);
  int theorem = flags.theorem;
  if (theorem == 0) {
    const auto t = default_witness_theorem(d);
    if (!t) throw WrongFamilyError("no witness construction covers " + name + "; pass --theorem");
    theorem = *t;
  }
  const auto g = build(d);
  WitnessOptions options;
  options.unverified_explore = flags.unverified_explore;
  const auto w = witness_for(theorem, g, d, options);
  const auto seq = w.sequence();
  const auto labels = element_labels(g, seq);

  std::ostringstream text;
  json blocks = json::array();
  std::vector<std::string> pieces;
  for (const auto& b : w.blocks) {
    blocks.push_back({{"name", b.name}, {"word", b.word}, {"element", g.label(b.element)}, {"multiplicity", b.multiplicity}});
    pieces.push_back("(" + b.word + ")^" + std::to_string(b.multiplicity));
  }
  json details{{"theorem", theorem},
               {"case", std::string(case_name(w.case_tag))},
               {"length", w.length()},
               {"target_value", w.target_value},
               {"blocks", blocks}};
  text << "witness for " << name << " (theorem " << theorem << ", case " << case_name(w.case_tag) << ")\n"
       << "  " << join(pieces) << "\n"
       << "  length " << w.length() << "\n";
  if (exploratory(d)) text << "  note: outside the proven scope (exploratory)\n";

  if (!flags.verify) {
    auto doc = run.document(name, "witness", w.length(), true, false);
    doc["witness"] = labels;
    doc["details"] = details;
    emit(flags, doc, text.str());
    return 0;
  }

  bool cached = false, free = false;
  auto hit = run.lookup(name, "witness_check");
  if (hit && hit->witness == labels) {
    free = hit->value.get<bool>();
    cached = true;
  } else {
    const auto t0 = Clock::now();
    free = is_ordered_free(g, seq);
    auto record = make_record(name, "witness_check", free, true, since(t0));
    record.witness = labels;
    run.store(record);
  }
  text << "  ordered-free: " << (free ? "true" : "false") << (cached ? " [cached]" : "") << "\n";
  int status = 0;
  if (!free && !exploratory(d)) status = kExitAssertion;

  if (d.family == Family::g1 || d.family == Family::g3) {
    bool oracle_cached = false;
    const bool oracle = oracle_verdict(run, d, oracle_cached);
    details["oracle"] = oracle;
    details["oracle_agrees"] = oracle == free;
    text << "  congruence oracle: " << (oracle ? "true" : "false") << (oracle_cached ? " [cached]" : "")
         << (oracle == free ? "" : " (DISAGREES with the group verdict)") << "\n";
    if (oracle != free) status = kExitAssertion;
    cached = cached && oracle_cached;
  }
  auto doc = run.document(name, "witness_check", free, true, cached);
  doc["witness"] = labels;
  if (free) {
    doc["bounds"] = {{"lower", w.length() + 1}, {"lower_source", "witness_theorem" + std::to_string(theorem)}};
    text << "  D >= " << w.length() + 1 << "\n";
  }
  doc["details"] = details;
  emit(flags, doc, text.str());
  return status;
}

int cmd_oracle(Run& run) {
  const auto d = parse_checked(run.flags().descriptor);
  const auto name = to_string(d);
  const auto sys = congruence_system(d);
  bool cached = false;
  const bool ok = oracle_verdict(run, d, cached);
  const bool disc = discriminant_check(sys.p, sys.case_tag);
  json details{{"case", std::string(case_name(sys.case_tag))},
               {"p", sys.p},
               {"alpha", sys.alpha},
               {"beta", sys.beta},
               {"third", sys.third},
               {"q", sys.q},
               {"ranges", sys.ranges},
               {"discriminant_nonresidue", disc}};
  std::ostringstream text;
  text << "congruence system for " << name << " (case " << case_name(sys.case_tag) << ")\n"
       << "  ranges x<=" << sys.ranges[0] << " y<=" << sys.ranges[1] << " z<=" << sys.ranges[2]
       << " w<=" << sys.ranges[3] << "\n";
  if (sys.q) text << "  q = " << sys.q << "\n";
  text << "  only the zero solution: " << (ok ? "true" : "false") << (cached ? " [cached]" : "") << "\n"
       << "  discriminant is a non-residue mod " << sys.p << ": " << (disc ? "true" : "false") << "\n";
  int status = 0;
  if (!disc) status = kExitAssertion;
  if (!ok && !exploratory(d)) status = kExitAssertion;
  if (exploratory(d)) text << "  note: outside the proven scope (exploratory)\n";
  auto doc = run.document(name, "oracle_check", ok, true, cached);
  doc["details"] = details;
  emit(run.flags(), doc, text.str());
  return status;
}

std::string optional_number(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

int cmd_scan(Run& run) {
  const auto& flags = run.flags();
  ScanGrid grid;
  std::string label;
  if (flags.families.empty()) {
    if (!flags.param_ranges.empty()) throw PreconditionError("--param-ranges needs --families");
    grid = default_scan_grid();
    label = "scan:default";
  } else {
    grid = scan_grid(parse_family_list(flags.families), parse_param_ranges(flags.param_ranges));
    label = "scan:" + flags.families + (flags.param_ranges.empty() ? "" : ";" + flags.param_ranges);
  }
  ScanOptions options;
  options.search = run.search_options();
  options.cache = run.cache();
  const auto rows = scan(grid.descriptors, options);

  bool refuted = false, all_confirmed = true, all_cached = true;
  json jrows = json::array();
  std::ostringstream text;
  if (flags.csv) text << "descriptor,order,L,lower,lower_source,upper,upper_source,status,cached\n";
  for (const auto& r : rows) {
    refuted = refuted || r.status == ScanStatus::refuted;
    all_confirmed = all_confirmed && r.status == ScanStatus::confirmed;
    all_cached = all_cached && r.cached;
    json row{{"descriptor", r.descriptor},
             {"order", r.order},
             {"L", r.loewy ? json(*r.loewy) : json(nullptr)},
             {"lower", r.lower},
             {"lower_source", r.lower_source},
             {"upper", r.upper ? json(*r.upper) : json(nullptr)},
             {"upper_source", r.upper_source},
             {"D", r.exact_value ? json(*r.exact_value) : json(nullptr)},
             {"status", std::string(status_name(r.status))},
             {"cached", r.cached},
             {"notes", r.notes}};
    jrows.push_back(row);
    const auto loewy = r.loewy ? std::to_string(*r.loewy) : std::string();
    if (flags.csv) {
      text << r.descriptor << ',' << r.order << ',' << loewy << ',' << r.lower << ',' << r.lower_source << ','
           << optional_number(r.upper) << ',' << r.upper_source << ',' << status_name(r.status) << ','
           << (r.cached ? "true" : "false") << "\n";
    } else {
      text << r.descriptor << "  |G|=" << r.order << (r.loewy ? "  L=" + loewy : "") << "  " << r.lower << " <= D";
      if (r.upper) text << " <= " << *r.upper;
      text << "  (" << r.lower_source << ", " << r.upper_source << ")  " << status_name(r.status)
           << (r.cached ? " [cached]" : "") << "\n";
      for (const auto& n : r.notes) text << "    note: " << n << "\n";
    }
  }
  if (!flags.csv) {
    text << rows.size() << " rows";
    if (grid.skipped_over_cap) text << ", " << grid.skipped_over_cap << " skipped above order " << kScanMaxOrder;
    text << (refuted ? ", REFUTED rows present" : ", no REFUTED rows") << "\n";
  }
  auto doc = run.document(label, "scan", !refuted, all_confirmed, !rows.empty() && all_cached);
  doc["rows"] = jrows;
  doc["skipped_over_cap"] = grid.skipped_over_cap;
  emit(flags, doc, text.str());
  return refuted ? kExitAssertion : 0;
}

void add_output_flags(CLI::App* cmd, Flags& f) {
  cmd->add_flag("--json", f.json, "Emit one JSON document");
  cmd->add_option("--cache", f.cache_path, "Cache file (default: $DAVLAB_CACHE or ./davlab-cache.jsonl)");
  cmd->add_flag("--no-cache", f.no_cache, "Neither read nor write the cache");
}

void add_budget_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--budget-states", f.budget_states, "Search state budget")->capture_default_str();
  cmd->add_option("--budget-seconds", f.budget_seconds, "Search time budget")->capture_default_str();
  cmd->add_option("--threads", f.threads, "Search workers (0: $DAVLAB_THREADS or 1)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum invariants and Loewy lengths of small finite groups"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Flags f;

  auto* info = app.add_subcommand("info", "Order, exponent, center, gamma_2, class and generator orders");
  auto* loewy = app.add_subcommand("loewy", "Loewy length of a p-group");
  auto* dav = app.add_subcommand("davenport", "D, D', E or weighted D_A by exhaustive search");
  auto* wit = app.add_subcommand("witness", "Extremal product-one free sequence");
  auto* orc = app.add_subcommand("oracle", "Exhaustive congruence check for the G1/G3 witnesses");
  auto* scn = app.add_subcommand("scan", "Bounds on D over a family grid");

  for (auto* cmd : {info, loewy, dav, wit, orc}) {
    cmd->add_option("descriptor", f.descriptor, kGrammar)->required();
    add_output_flags(cmd, f);
  }
  add_output_flags(scn, f);
  loewy->add_option("--method", f.method, "direct, formula or both")
      ->check(CLI::IsMember({"direct", "formula", "both"}))
      ->capture_default_str();
  dav->add_option("--variant", f.variant, "ordered, unordered, E or weighted")
      ->check(CLI::IsMember({"ordered", "unordered", "E", "weighted"}))
      ->capture_default_str();
  dav->add_option("--weights", f.weights, "Weight set A, e.g. 1,4")->delimiter(',');
  add_budget_flags(dav, f);
  add_budget_flags(scn, f);
  wit->add_option("--theorem", f.theorem, "1, 6 or 7 (default: chosen from the family)")
      ->check(CLI::IsMember({1, 6, 7}));
  wit->add_flag("--verify", f.verify, "Check ordered freeness and, for g1/g3, the congruence oracle");
  wit->add_flag("--unverified-explore", f.unverified_explore, "Allow g1 with gamma > 1 and g3 with sigma > 1");
  scn->add_flag("--csv", f.csv, "CSV table");
  scn->add_option("--families", f.families, "Comma-separated families: c,d,q,sd,m2,g1,g2,g3,g4");
  scn->add_option("--param-ranges", f.param_ranges, "e.g. order=8..32 or p=3..5,alpha=1..2,gamma=1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }
  if (f.json && f.csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return kExitError;
  }

  Run run(f);
  try {
    if (info->parsed()) return cmd_info(run);
    if (loewy->parsed()) return cmd_loewy(run);
    if (dav->parsed()) return cmd_davenport(run);
    if (wit->parsed()) return cmd_witness(run);
    if (orc->parsed()) return cmd_oracle(run);
    if (scn->parsed()) return cmd_scan(run);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
