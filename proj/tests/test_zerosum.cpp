#include "davlab/errors.hpp"
#include "davlab/group.hpp"
#include "davlab/jennings.hpp"
#include "davlab/zerosum.hpp"

#include <doctest.h>

#include "naive.hpp"

#include <algorithm>
#include <functional>
#include <set>

using namespace davlab;
using namespace davlab::testing;

namespace {

std::vector<Element> repeat(Element x, std::size_t k) { return std::vector<Element>(k, x); }

std::vector<Element> concat(std::vector<Element> a, const std::vector<Element>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::string> small_grid() {
  return {"c[1]", "c[2]", "c[3]", "c[4]", "c[5]",  "c[6]",     "c[7]",      "c[8]", "c[9]",
          "c[10]", "ab[2,2]", "d[6]", "q[8]", "d[8]", "d[10]", "ab[2,4]", "ab[2,2,2]"};
}

FiniteGroup make(const std::string& text) { return build(parse_descriptor(text)); }

} // namespace

TEST_CASE("reach_extend") {
  const auto q8 = make("q[8]");
  const auto x = q8.generator("x"), y = q8.generator("y");

  auto s = reach_extend(q8, empty_reach_state(q8), x);
  CHECK(s.products.indices() == std::vector<std::size_t>{index(x)});

  auto ab = reach_extend(q8, reach_extend(q8, empty_reach_state(q8), x), y);
  std::set<std::size_t> expected{index(x), index(y), index(q8.mul(x, y))};
  auto got = ab.products.indices();
  CHECK(std::set<std::size_t>(got.begin(), got.end()) == expected);

  const auto seq = concat(repeat(y, 3), {x});
  const auto state = reach_of(q8, seq);
  const auto naive = naive_products(q8, seq, {1});
  got = state.products.indices();
  CHECK(std::set<std::size_t>(got.begin(), got.end()) == naive);
  CHECK(state.products.count() == 7);
  CHECK_FALSE(state.products.test(0));
  for (auto e : {x, y, q8.pow(y, 2), q8.pow(y, 3), q8.mul(y, x), q8.mul(q8.pow(y, 2), x), q8.mul(q8.pow(y, 3), x)})
    CHECK(state.products.test(index(e)));

  // Extension never shrinks the state.
  auto grown = reach_extend(q8, state, q8.mul(x, y));
  CHECK(state.products.is_subset_of(grown.products));
}

TEST_CASE("is_ordered_free") {
  const auto q8 = make("q[8]");
  const auto x = q8.generator("x"), y = q8.generator("y");
  CHECK(is_ordered_free(q8, concat(repeat(y, 3), {x})));
  CHECK_FALSE(is_ordered_free(q8, std::vector<Element>{y, kIdentity}));
  CHECK(is_ordered_free(q8, std::vector<Element>{}));
  CHECK_FALSE(is_ordered_free(q8, repeat(y, 4)));

  const auto g = make("g2[3,2,1,1]");
  const auto a = g.generator("a"), b = g.generator("b");
  const auto w = concat(repeat(a, 8), repeat(b, 2));
  CHECK(w.size() == 10);
  CHECK(is_ordered_free(g, w));
}

TEST_CASE("davenport_ordered examples") {
  auto q8 = davenport_ordered(make("q[8]"));
  CHECK(q8.value == 5);
  CHECK(q8.exact);
  CHECK(davenport_ordered(make("c[1]")).value == 1);
  CHECK(davenport_ordered(make("q[12]")).value == 7);
  CHECK(davenport_ordered(make("sd[16]")).value == 9);
  for (int n = 1; n <= 12; ++n) CHECK(davenport_ordered(build(cyclic(n))).value == static_cast<std::size_t>(n));

  // Lexicographic tie-break reproduces y^3 x.
  const auto g = make("q[8]");
  CHECK(q8.witness == concat(repeat(g.generator("y"), 3), {g.generator("x")}));

  CHECK_THROWS_AS(davenport_ordered(make("ab[3,3,9]")), GroupTooLargeError);
  SearchOptions wide;
  wide.max_order = 81;
  CHECK(davenport_ordered(make("c[70]"), wide).value == 70);
}

TEST_CASE("budgets degrade to a verified lower bound") {
  const auto g = make("q[16]");
  SearchOptions tight;
  tight.max_states = 50;
  auto r = davenport_ordered(g, tight);
  CHECK_FALSE(r.exact);
  CHECK(r.value <= 9);
  CHECK(r.witness.size() + 1 == r.value);
  CHECK(is_ordered_free(g, r.witness));

  SearchOptions no_time;
  no_time.max_seconds = 0;
  no_time.max_states = 2048;
  auto t = davenport_ordered(make("q[32]"), no_time);
  CHECK_FALSE(t.exact);
  CHECK(is_ordered_free(make("q[32]"), t.witness));
}

TEST_CASE("parallel root partition matches the serial search") {
  for (auto name : {"sd[16]", "m2[16]", "ab[2,8]", "d[12]"}) {
    CAPTURE(name);
    const auto g = make(name);
    SearchOptions serial, parallel;
    serial.threads = 1;
    parallel.threads = 4;
    auto a = davenport_ordered(g, serial);
    auto b = davenport_ordered(g, parallel);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("olson_white_bound") {
  CHECK(olson_white_bound(make("sd[16]")) == 9);
  CHECK(olson_white_bound(make("q[12]")) == 7);
  CHECK_THROWS_AS(olson_white_bound(make("c[4]")), PreconditionError);
}

TEST_CASE("product-one checks") {
  const auto q8 = make("q[8]");
  const auto x = q8.generator("x"), y = q8.generator("y");
  std::vector<Element> pair{x, q8.inv(x)};
  CHECK(is_product_one(q8, pair));
  CHECK(is_minimal_product_one(q8, pair));
  CHECK_FALSE(is_product_one(q8, concat(repeat(y, 3), {x})));
  // y^2 y^2 has no proper product-one part; y y^3 1 has two.
  CHECK(is_minimal_product_one(q8, std::vector<Element>{q8.pow(y, 2), q8.pow(y, 2)}));
  CHECK_FALSE(is_minimal_product_one(q8, std::vector<Element>{y, q8.pow(y, 3), kIdentity}));
  CHECK_THROWS_AS(is_product_one(q8, repeat(y, kArrangementCap + 1)), BudgetError);

  // A longest free sequence plus the inverse of its product is a minimal
  // product-one sequence of length D(G).
  for (const auto& name : small_grid()) {
    CAPTURE(name);
    const auto g = make(name);
    const auto r = davenport_ordered(g);
    auto seq = r.witness;
    seq.push_back(g.inv(product(g, seq)));
    CHECK(seq.size() == r.value);
    CHECK(is_product_one(g, seq));
    CHECK(is_minimal_product_one(g, seq));
  }
}

TEST_CASE("davenport_unordered") {
  CHECK(davenport_unordered(make("c[1]")).value == 1);
  auto m16 = davenport_unordered(make("m2[16]"));
  CHECK(m16.value == 9);
  CHECK(m16.exact);
  CHECK(is_unordered_free(make("m2[16]"), m16.witness));
  CHECK_THROWS_AS(davenport_unordered(make("c[17]")), GroupTooLargeError);

  const auto q8 = make("q[8]");
  CHECK_FALSE(is_unordered_free(q8, std::vector<Element>{q8.generator("x"), q8.generator("x"), q8.pow(q8.generator("y"), 2)}));

  for (const auto& name : small_grid()) {
    CAPTURE(name);
    const auto g = make(name);
    const auto u = davenport_unordered(g);
    const auto o = davenport_ordered(g);
    CHECK(u.exact);
    CHECK(u.value <= o.value);
    CHECK(u.witness.size() + 1 == u.value);
    CHECK(is_unordered_free(g, u.witness));
    if (is_abelian(g)) CHECK(u.value == o.value);
  }
}

TEST_CASE("E(G)") {
  CHECK(eg_invariant(make("c[1]")).value == 1);
  for (int n = 1; n <= 6; ++n) CHECK(eg_invariant(build(cyclic(n))).value == static_cast<std::size_t>(2 * n - 1));
  CHECK_THROWS_AS(eg_invariant(make("c[9]")), GroupTooLargeError);

  // Frozen from an independent enumeration over permutations of {0,1,2}:
  // strictly above D(S_3) + |G| - 1 = 9 for index-ordered products.
  const auto s3 = make("d[6]");
  const auto e = eg_invariant(s3);
  CHECK(e.value == 11);
  CHECK_FALSE(has_ordered_product_one_of_length(s3, e.witness, 6));
  CHECK_FALSE(naive_has_length(s3, e.witness, 6));

  for (auto name : {"c[2]", "c[3]", "c[4]", "ab[2,2]"}) {
    CAPTURE(name);
    const auto g = make(name);
    CHECK(eg_invariant(g).value == naive_eg(g));
  }
  for (auto name : {"c[5]", "ab[2,2]", "d[6]", "q[8]", "d[8]", "ab[2,4]"}) {
    CAPTURE(name);
    const auto g = make(name);
    const auto r = eg_invariant(g);
    REQUIRE(r.exact);
    CHECK(r.value >= davenport_ordered(g).value + g.order() - 1);
    CHECK(r.witness.size() + 1 == r.value);
    CHECK_FALSE(has_ordered_product_one_of_length(g, r.witness, g.order()));
  }
}

TEST_CASE("eg_lower_witness") {
  const auto q8 = make("q[8]");
  const auto w = davenport_ordered(q8).witness;
  const auto t = eg_lower_witness(q8, w);
  CHECK(t.size() == 11);
  CHECK_FALSE(has_ordered_product_one_of_length(q8, t, 8));
  CHECK(has_ordered_product_one_of_length(q8, concat(t, {kIdentity}), 8));

  const auto c3 = make("c[3]");
  const auto g = c3.generator("g");
  const auto t3 = eg_lower_witness(c3, repeat(g, 2));
  CHECK(t3.size() == 4);
  CHECK_FALSE(has_ordered_product_one_of_length(c3, t3, 3));

  CHECK(eg_lower_witness(make("c[1]"), std::vector<Element>{}).empty());
  CHECK_THROWS_AS(eg_lower_witness(c3, repeat(g, 3)), PreconditionError);

  for (auto len : {0u, 1u, 3u, 5u})
    CHECK(has_ordered_product_one_of_length(c3, repeat(g, 6), len) == naive_has_length(c3, repeat(g, 6), len));
}

TEST_CASE("davenport_weighted") {
  const std::vector<int> unit{1};
  CHECK(davenport_weighted(make("c[5]"), std::vector<int>{1, 4}).value == 3);
  CHECK(naive_davenport(make("c[5]"), {1, 4}) == 3);

  const auto q8 = make("q[8]");
  const std::vector<int> odd{1, 3};
  const auto r = davenport_weighted(q8, odd);
  CHECK(r.value == naive_davenport(q8, odd));
  CHECK(is_weighted_free(q8, r.witness, odd));

  CHECK_THROWS_AS(davenport_weighted(q8, std::vector<int>{}), PreconditionError);
  CHECK_THROWS_AS(davenport_weighted(q8, std::vector<int>{4}), PreconditionError);
  CHECK_THROWS_AS(davenport_weighted(q8, std::vector<int>{0}), PreconditionError);

  for (const auto& name : small_grid()) {
    if (name == "c[1]") continue;
    CAPTURE(name);
    const auto g = make(name);
    CHECK(davenport_weighted(g, unit).value == davenport_ordered(g).value);
  }
}

TEST_CASE("min_weight_set") {
  const auto c5 = make("c[5]");
  CHECK(min_weight_set(c5, 5) == 1u);
  CHECK(min_weight_set(c5, 3) == 2u);
  CHECK_FALSE(min_weight_set(c5, 1).has_value());
  CHECK(min_weight_set(make("q[8]"), 5) == 1u);
  CHECK_THROWS_AS(min_weight_set(make("c[1]"), 1), PreconditionError);
}

TEST_CASE("search invariants over small groups") {
  for (const auto& name : small_grid()) {
    CAPTURE(name);
    const auto g = make(name);
    const auto r = davenport_ordered(g);
    REQUIRE(r.exact);
    CHECK(r.value == naive_davenport(g));
    CHECK(r.value <= g.order());
    CHECK(r.witness.size() + 1 == r.value);
    CHECK(is_ordered_free(g, r.witness));
    if (!is_cyclic(g)) CHECK(r.value <= olson_white_bound(g));
    if (auto p = g.prime(); p && g.order() > 1) CHECK(r.value <= static_cast<std::size_t>(loewy_length(g, *p)));
  }
  for (auto name : {"q[16]", "sd[16]", "m2[16]", "d[16]", "ab[4,4]", "ab[2,2,4]", "g1[3,1,1,1]"}) {
    CAPTURE(name);
    const auto g = make(name);
    const auto r = davenport_ordered(g);
    CHECK(r.exact);
    CHECK(r.value <= static_cast<std::size_t>(loewy_length(g, *g.prime())));
    CHECK(is_ordered_free(g, r.witness));
  }
}
