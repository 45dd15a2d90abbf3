#include "davlab/cache.hpp"
#include "davlab/errors.hpp"
#include "davlab/scan.hpp"
#include "davlab/version.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace davlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    char tmpl[] = "/tmp/davlab-test-XXXXXX";
    path = ::mkdtemp(tmpl);
  }
  ~TempDir() { fs::remove_all(path); }
};

ResultRecord sample(std::string descriptor, nlohmann::json value) {
  return make_record(std::move(descriptor), "D", std::move(value), true, 12);
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

} // namespace

TEST_CASE("record json round trip") {
  auto r = sample("q[8]", 5);
  r.weight_set = std::vector<int>{1, 3};
  r.witness = std::vector<std::string>{"y", "y", "y", "x"};
  const auto back = record_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(to_json(back) == to_json(r));
  CHECK(to_json(r)["v"] == 1);
  CHECK(back.tool_version == kToolVersion);

  auto bad = to_json(r);
  bad["value"] = "five";
  CHECK_THROWS(record_from_json(bad));
  bad = to_json(r);
  bad.erase("exact");
  CHECK_THROWS(record_from_json(bad));
  bad = to_json(r);
  bad["v"] = 2;
  CHECK_THROWS(record_from_json(bad));
}

TEST_CASE("timestamp and version helpers") {
  const auto ts = iso_timestamp();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
  CHECK(version_major("1.0.0") == 1);
  CHECK(version_major("12.3") == 12);
  CHECK_FALSE(version_major("x1").has_value());
}

TEST_CASE("cache path resolution") {
  ::unsetenv("DAVLAB_CACHE");
  CHECK(resolve_cache_path(std::nullopt) == fs::path("davlab-cache.jsonl"));
  ::setenv("DAVLAB_CACHE", "/tmp/env.jsonl", 1);
  CHECK(resolve_cache_path(std::nullopt) == fs::path("/tmp/env.jsonl"));
  CHECK(resolve_cache_path(std::string("flag.jsonl")) == fs::path("flag.jsonl"));
  ::unsetenv("DAVLAB_CACHE");
}

TEST_CASE("cache get and put") {
  TempDir dir;
  const auto file = dir.path / "c.jsonl";

  SUBCASE("missing and empty files") {
    CHECK_FALSE(ResultCache(file).get("q[8]", "D"));
    std::ofstream(file).close();
    ResultCache cache(file);
    CHECK(cache.size() == 0);
    CHECK(cache.warnings().empty());
    CHECK_FALSE(cache.get("q[8]", "D"));
  }

  SUBCASE("put then get round-trips") {
    auto r = sample("q[8]", 5);
    r.witness = std::vector<std::string>{"y", "y", "y", "x"};
    ResultCache(file).put(r);
    const auto got = ResultCache(file).get("q[8]", "D");
    REQUIRE(got);
    CHECK(to_json(*got) == to_json(r));
    CHECK(line_count(file) == 1);
  }

  SUBCASE("later put wins, in memory and on reload") {
    ResultCache cache(file);
    cache.put(sample("q[8]", 4));
    cache.put(sample("q[8]", 5));
    CHECK(cache.get("q[8]", "D")->value == 5);
    CHECK(ResultCache(file).get("q[8]", "D")->value == 5);
  }

  SUBCASE("key includes invariant and weight set") {
    ResultCache cache(file);
    auto weighted = make_record("c[5]", "DA", 3, true, 0);
    weighted.weight_set = std::vector<int>{1, 4};
    cache.put(weighted);
    cache.put(make_record("c[5]", "D", 5, true, 0));
    CHECK(cache.get("c[5]", "DA", std::vector<int>{1, 4})->value == 3);
    CHECK_FALSE(cache.get("c[5]", "DA", std::vector<int>{1, 2}));
    CHECK_FALSE(cache.get("c[5]", "DA"));
    CHECK(cache.get("c[5]", "D")->value == 5);
    CHECK_FALSE(cache.get("c[6]", "D"));
  }

  SUBCASE("other major versions are ignored") {
    ResultCache cache(file);
    auto old = sample("q[8]", 5);
    old.tool_version = "0.9.0";
    cache.put(old);
    CHECK_FALSE(cache.get("q[8]", "D"));
    auto newer = sample("q[8]", 5);
    newer.tool_version = "1.7.2";
    cache.put(newer);
    CHECK(cache.get("q[8]", "D")->tool_version == "1.7.2");
  }

  SUBCASE("corrupt lines are skipped with a warning") {
    ResultCache(file).put(sample("q[8]", 5));
    {
      std::ofstream out(file, std::ios::app);
      out << "{\"v\":1,\"descriptor\":\n";
      out << "[1,2,3]\n";
      out << "\n";
    }
    ResultCache(file).put(sample("d[8]", 5));
    ResultCache cache(file);
    CHECK(cache.size() == 2);
    CHECK(cache.warnings().size() == 2);
    CHECK(cache.get("q[8]", "D"));
    CHECK(cache.get("d[8]", "D"));
  }

  SUBCASE("unwritable path") {
    ResultCache cache(dir.path / "missing" / "c.jsonl");
    CHECK_THROWS_AS(cache.put(sample("q[8]", 5)), IoError);
    CHECK(cache.size() == 0);
  }
}

TEST_CASE("param range parsing") {
  const auto r = parse_param_ranges("p=3..5,alpha=1..2,gamma=1");
  CHECK(r.at("p").lo == 3);
  CHECK(r.at("p").hi == 5);
  CHECK(r.at("alpha").hi == 2);
  CHECK(r.at("gamma").lo == 1);
  CHECK(r.at("gamma").hi == 1);
  CHECK(parse_param_ranges("").empty());
  CHECK_THROWS_AS(parse_param_ranges("p=5..3"), ParseError);
  CHECK_THROWS_AS(parse_param_ranges("zeta=1"), ParseError);
  CHECK_THROWS_AS(parse_param_ranges("p"), ParseError);
  CHECK_THROWS_AS(parse_param_ranges("p=a..b"), ParseError);
  CHECK(parse_family_list("d,q,sd,m2").size() == 4);
  CHECK_THROWS_AS(parse_family_list("d,,q"), ParseError);
  CHECK_THROWS_AS(parse_family_list("s3"), ParseError);
}

TEST_CASE("scan grids") {
  const auto two = scan_grid({"d", "q", "sd", "m2"}, {{"order", {8, 32}}});
  std::vector<std::string> names;
  for (const auto& d : two.descriptors) names.push_back(to_string(d));
  CHECK(std::count(names.begin(), names.end(), "sd[8]") == 0);
  CHECK(std::count(names.begin(), names.end(), "m2[16]") == 1);
  CHECK(std::count(names.begin(), names.end(), "d[10]") == 1);
  CHECK(std::count(names.begin(), names.end(), "q[10]") == 0);

  const auto g = scan_grid({"g1"}, {{"p", {3, 5}}, {"alpha", {1, 4}}, {"beta", {1, 4}}, {"gamma", {1, 1}}});
  for (const auto& d : g.descriptors) {
    CHECK(d.param("gamma") == 1);
    CHECK(d.param("alpha") >= d.param("beta"));
    CHECK(expected_order(d) <= kScanMaxOrder);
  }
  CHECK(g.skipped_over_cap > 0);

  CHECK_THROWS_AS(scan_grid({"c", "d", "q"}, {{"order", {1, 729}}}), GridTooLargeError);
  CHECK_THROWS_AS(scan_grid({"g4"}, {{"p", {3, 100}}, {"alpha", {1, 20}}, {"beta", {1, 20}}, {"gamma", {1, 20}}}),
                  GridTooLargeError);

  const auto def = default_scan_grid();
  CHECK(def.descriptors.size() == 48);
  for (const auto& d : def.descriptors) {
    CAPTURE(to_string(d));
    CHECK(default_witness_theorem(d).has_value());
    if (d.family == Family::g1) CHECK(d.param("gamma") == 1);
    if (d.family == Family::g3) CHECK(d.param("sigma") == 1);
  }
}

TEST_CASE("descriptor cyclicity") {
  CHECK(descriptor_is_cyclic(cyclic(12)));
  CHECK(descriptor_is_cyclic(abelian_product({3, 4})));
  CHECK_FALSE(descriptor_is_cyclic(abelian_product({2, 2})));
  CHECK_FALSE(descriptor_is_cyclic(dihedral_of_order(4)));
  CHECK_FALSE(descriptor_is_cyclic(dicyclic_of_order(12)));
}

TEST_CASE("scan verdict") {
  ScanRow r;
  r.lower = 9;
  r.upper = 9;
  CHECK(scan_verdict(r) == ScanStatus::confirmed);
  r.lower = 7;
  CHECK(scan_verdict(r) == ScanStatus::consistent);
  r.lower = 10;
  CHECK(scan_verdict(r) == ScanStatus::refuted);
  r.lower = 8;
  r.loewy = 9;
  r.exact_value = 8;
  CHECK(scan_verdict(r) == ScanStatus::refuted);
  r.upper.reset();
  r.loewy.reset();
  r.exact_value.reset();
  CHECK(scan_verdict(r) == ScanStatus::consistent);
  CHECK(status_name(ScanStatus::confirmed) == "CONFIRMED");
}

TEST_CASE("scan rows and caching") {
  TempDir dir;
  ResultCache cache(dir.path / "c.jsonl");
  ScanOptions options;
  options.cache = &cache;

  const auto q8 = scan_row(dicyclic_of_order(8), options);
  CHECK(q8.loewy == 5);
  CHECK(q8.lower == 5);
  CHECK(q8.lower_source == "witness_theorem7");
  CHECK(q8.upper_source == "loewy");
  CHECK(q8.status == ScanStatus::confirmed);
  CHECK_FALSE(q8.cached);
  const auto again = scan_row(dicyclic_of_order(8), options);
  CHECK(again.cached);
  CHECK(again.lower == 5);
  CHECK(again.status == ScanStatus::confirmed);

  const auto q12 = scan_row(dicyclic_of_order(12), options);
  CHECK_FALSE(q12.loewy.has_value());
  CHECK(q12.upper_source == "olson_white");
  CHECK(q12.lower == 7);
  CHECK(q12.status == ScanStatus::confirmed);

  // No construction covers d[12]; the search pins it.
  const auto d12 = scan_row(dihedral_of_order(12), options);
  CHECK(d12.exact_value == 7);
  CHECK(d12.lower_source == "search");
  CHECK(d12.status == ScanStatus::confirmed);

  const auto c6 = scan_row(cyclic(6), options);
  CHECK(c6.upper_source == "cyclic");
  CHECK(c6.status == ScanStatus::confirmed);

  // A starved search still yields a verified lower bound, but no exact D,
  // and its record is not served back.
  ScanOptions starved;
  starved.cache = &cache;
  starved.search.max_states = 5;
  const auto d30 = scan_row(dihedral_of_order(30), starved);
  CHECK_FALSE(d30.exact_value.has_value());
  CHECK(d30.lower_source == "partial_search");
  CHECK(d30.status != ScanStatus::refuted);
  CHECK_FALSE(cache.get("d[30]", "D")->exact);
  CHECK_FALSE(scan_row(dihedral_of_order(30), starved).cached);

  ScanOptions explore;
  const auto wild = scan_row(g1(3, 2, 2, 2), explore);
  CHECK(wild.status == ScanStatus::consistent);
  CHECK(wild.lower_source == "trivial");
  CHECK(wild.notes.size() == 2);

  // Every computed component is in the cache.
  ResultCache reloaded(dir.path / "c.jsonl");
  CHECK(reloaded.get("q[8]", "L")->value == 5);
  CHECK(reloaded.get("q[8]", "witness_check")->value == true);
  CHECK(reloaded.get("d[12]", "D")->value == 7);
}
