#include "davlab/descriptor.hpp"
#include "davlab/errors.hpp"
#include "davlab/group.hpp"
#include "davlab/presentation.hpp"
#include "davlab/subgroup.hpp"

#include "grid.hpp"

#include <doctest.h>

#include <random>

using namespace davlab;

namespace {

// Closure of every pairwise commutator, straight from the definition.
Subgroup naive_commutator_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  ElementSet comms(g.order());
  for (auto x : h.elements())
    for (auto y : k.elements()) comms.set(index(g.commutator(x, y)));
  return subgroup_closure(g, comms);
}

std::size_t naive_center_size(const FiniteGroup& g) {
  std::size_t n = 0;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < g.order() && central; ++y)
      central = g.mul(element(x), element(y)) == g.mul(element(y), element(x));
    n += central;
  }
  return n;
}

std::vector<GroupDescriptor> core_grid() {
  std::vector<GroupDescriptor> grid{cyclic(1), cyclic(2), cyclic(9), cyclic(12), abelian_product({2, 2}),
                                    abelian_product({2, 4, 3}), dihedral_of_order(6), dihedral_of_order(10),
                                    dicyclic_of_order(12), dicyclic_of_order(20), semidihedral_of_order(24)};
  for (auto& d : testing::two_group_families(6)) grid.push_back(d);
  for (auto& d : testing::class_two_families({3, 5}, 729)) grid.push_back(d);
  return grid;
}

} // namespace

TEST_CASE("descriptor grammar") {
  CHECK(to_string(parse_descriptor("g1[3,1,1,1]")) == "g1[3,1,1,1]");
  CHECK(to_string(parse_descriptor("q[08]")) == "q[8]");
  CHECK(parse_descriptor("sd[16]").param("n") == 2);
  CHECK(parse_descriptor("m2[16]").param("r") == 4);
  CHECK(parse_descriptor("ab[2,3,4]").factors == std::vector<std::int64_t>{2, 3, 4});
  CHECK(parse_descriptor("g4[3,4,2,2,1,0]").param("rho") == 1);
  CHECK(parse_descriptor("g4[3,4,2,2,1,0]").param("sigma") == 0);

  CHECK_THROWS_AS(parse_descriptor("g1[3,1,1]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("x[3]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("c[ 3]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("c[-3]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("q[6]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("m2[24]"), ParseError);
  CHECK_THROWS_AS(parse_descriptor("c3"), ParseError);
}

TEST_CASE("validate_descriptor") {
  CHECK_NOTHROW(validate_descriptor(g1(3, 1, 1, 1)));
  CHECK_THROWS_WITH_AS(validate_descriptor(g3(3, 2, 2, 2, 1)), doctest::Contains("alpha + sigma >= 2*gamma"),
                       ConstraintError);
  CHECK_THROWS_WITH_AS(validate_descriptor(parse_descriptor("q[4]")), doctest::Contains("n >= 2"),
                       ConstraintError);
  CHECK_THROWS_AS(validate_descriptor(g1(3, 1, 2, 1)), ConstraintError);
  CHECK_THROWS_AS(validate_descriptor(g1(4, 1, 1, 1)), ConstraintError);
  CHECK_THROWS_AS(validate_descriptor(g1(2, 1, 1, 1)), ConstraintError);
  CHECK_THROWS_AS(validate_descriptor(g2(3, 1, 1, 1)), ConstraintError);
  CHECK_THROWS_AS(validate_descriptor(g4(3, 3, 2, 2, 1, 0)), ConstraintError);
  CHECK_NOTHROW(validate_descriptor(g4(3, 4, 2, 2, 1, 0)));
  CHECK_THROWS_AS(validate_descriptor(modular2_of_order(8)), ConstraintError);
}

TEST_CASE("build basics") {
  SUBCASE("dicyclic Q_8") {
    const auto g = build(dicyclic_of_order(8));
    const auto x = g.generator("x"), y = g.generator("y");
    CHECK(g.order() == 8);
    CHECK(g.pow(x, 2) == g.pow(y, 2));
    CHECK(g.pow(y, 4) == kIdentity);
    CHECK(element_order(g, y) == 4);
  }
  SUBCASE("trivial group") {
    const auto g = build(cyclic(1));
    CHECK(g.order() == 1);
    CHECK(g.mul(kIdentity, kIdentity) == kIdentity);
    CHECK(g.label(kIdentity) == "1");
  }
  SUBCASE("Heisenberg group of order 27") {
    const auto g = build(g1(3, 1, 1, 1));
    CHECK(g.order() == 27);
    CHECK(exponent(g) == 3);
    CHECK(naive_center_size(g) == 3);
    CHECK(center(g).size() == 3);
  }
  SUBCASE("order cap") {
    CHECK_THROWS_AS(build(cyclic(5000)), GroupTooLargeError);
    CHECK_THROWS_AS(build(g1(17, 1, 1, 1)), GroupTooLargeError);
    CHECK_THROWS_AS(build(g3(3, 2, 2, 2, 1)), ConstraintError);
  }
}

TEST_CASE("element arithmetic") {
  const auto heis = build(g1(3, 1, 1, 1));
  const auto a = heis.generator("a"), b = heis.generator("b"), c = heis.generator("c");
  CHECK(heis.commutator(a, b) == c);
  CHECK(heis.commutator(a, a) == kIdentity);
  CHECK(heis.commutator(b, b) == kIdentity);
  CHECK_FALSE(is_cyclic(heis));
  CHECK(is_cyclic(build(cyclic(12))));
  CHECK(is_cyclic(build(abelian_product({3, 4}))));
  const auto q12 = build(dicyclic_of_order(12));
  CHECK(exponent(q12) == 12);
  CHECK_FALSE(is_cyclic(q12));
  CHECK(heis.pow(a, -1) == heis.inv(a));
  CHECK(heis.pow(a, 4) == a);
  CHECK(element_order(heis, kIdentity) == 1);

  const auto q8 = build(dicyclic_of_order(8));
  CHECK(q8.pow(q8.generator("y"), 4) == kIdentity);

  const auto g2g = build(g2(3, 2, 1, 1));
  CHECK(element_order(g2g, g2g.generator("a")) == 9);
  CHECK(exponent(g2g) == 9);
}

TEST_CASE("subgroup closure") {
  const auto g = build(g1(3, 2, 1, 1));
  const auto a = g.generator("a"), b = g.generator("b");
  CHECK(subgroup_closure(g, std::vector{a}).size() == 9);
  CHECK(subgroup_closure(g, std::vector<Element>{}).is_trivial());
  CHECK(subgroup_closure(g, std::vector{a, b}).size() == g.order());

  SUBCASE("idempotent and monotone on random generating sets") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Element> small, large;
      for (int i = 0; i < 2; ++i) small.push_back(element(pick(rng)));
      large = small;
      large.push_back(element(pick(rng)));
      const auto h = subgroup_closure(g, small);
      CHECK(subgroup_closure(g, h.elements()) == h);
      CHECK(is_subgroup_of(h, subgroup_closure(g, large)));
      CHECK(g.order() % h.size() == 0);
      CHECK(subgroup_closure(g, h.generators()) == h);
    }
  }
}

TEST_CASE("commutator subgroups") {
  const auto heis = build(g1(3, 1, 1, 1));
  const auto all = whole_group(heis);
  const auto derived = commutator_subgroup(heis, all, all);
  CHECK(derived.size() == 3);
  CHECK(derived.contains(heis.generator("c")));

  const auto ab = build(abelian_product({2, 4}));
  CHECK(commutator_subgroup(ab, whole_group(ab), whole_group(ab)).is_trivial());

  const auto g = build(g2(3, 2, 1, 1));
  const auto d2 = commutator_subgroup(g, whole_group(g), whole_group(g));
  CHECK(d2.size() == 3);
  CHECK(d2 == subgroup_closure(g, std::vector{g.pow(g.generator("a"), 3)}));

  SUBCASE("generator-based route matches the pairwise definition") {
    for (const auto& d : {dihedral_of_order(12), dicyclic_of_order(16), g1(3, 2, 1, 1), g3(3, 3, 2, 2, 1)}) {
      const auto grp = build(d);
      const auto whole = whole_group(grp);
      const auto h = subgroup_closure(grp, std::vector{grp.generator(grp.generators()[0].name)});
      CHECK(commutator_subgroup(grp, whole, whole) == naive_commutator_subgroup(grp, whole, whole));
      CHECK(commutator_subgroup(grp, h, whole) == naive_commutator_subgroup(grp, h, whole));
    }
  }
}

TEST_CASE("power subgroups and products") {
  const auto heis = build(g1(3, 1, 1, 1));
  const auto all = whole_group(heis);
  // Every cube is trivial in exponent 3.
  ElementSet cubes(heis.order());
  for (std::size_t x = 0; x < heis.order(); ++x) {
    const auto e = element(x);
    cubes.set(index(heis.mul(heis.mul(e, e), e)));
  }
  CHECK(power_subgroup(heis, all, 3) == subgroup_closure(heis, cubes));
  CHECK(power_subgroup(heis, all, 3).is_trivial());
  CHECK(power_subgroup(heis, all, 1) == all);

  const auto c9 = build(cyclic(9));
  CHECK(power_subgroup(c9, whole_group(c9), 3).size() == 3);

  const auto g = build(g2(3, 2, 1, 1));
  const auto a3 = subgroup_closure(g, std::vector{g.pow(g.generator("a"), 3)});
  const auto b3 = subgroup_closure(g, std::vector{g.pow(g.generator("b"), 3)});
  CHECK(product_subgroup(g, a3, b3) == power_subgroup(g, whole_group(g), 3));
}

TEST_CASE("quotient orders") {
  const auto heis = build(g1(3, 1, 1, 1));
  const auto all = whole_group(heis);
  const auto frattini =
      product_subgroup(heis, commutator_subgroup(heis, all, all), power_subgroup(heis, all, 3));
  CHECK(quotient_order(all, frattini) == 9);
  CHECK(quotient_order(all, all) == 1);
  CHECK(is_normal(heis, frattini));

  const auto s3 = build(dihedral_of_order(6));
  const auto reflection = subgroup_closure(s3, std::vector{s3.generator("x")});
  CHECK_FALSE(is_normal(s3, reflection));
  CHECK_THROWS_AS(quotient_order(whole_group(s3), reflection), PreconditionError);
  CHECK_THROWS_AS(quotient_order(reflection, whole_group(s3)), PreconditionError);
}

TEST_CASE("verify_presentation examples") {
  CHECK(verify_presentation(build(g3(3, 3, 2, 2, 1)), g3(3, 3, 2, 2, 1)).all_pass());
  const auto c5 = verify_presentation(build(cyclic(5)), cyclic(5));
  CHECK(c5.all_pass());
  const auto m16 = verify_presentation(build(modular2_of_order(16)), modular2_of_order(16));
  CHECK(m16.all_pass());
  bool saw_action = false;
  for (const auto& r : m16.relations) saw_action |= r.relation == "x^-1 y x = y^5";
  CHECK(saw_action);

  // A table checked against the wrong family's relations must fail.
  CHECK_FALSE(verify_presentation(build(dihedral_of_order(8)), dicyclic_of_order(8)).all_pass());
}

TEST_CASE("semidihedral parameterizations agree") {
  for (int r : {4, 5, 6}) {
    const auto a = build(semidihedral_of_order(std::int64_t{1} << r));
    const auto b = build_semidihedral_two_power(r);
    REQUIRE(a.order() == b.order());
    bool same = true;
    for (std::size_t x = 0; x < a.order(); ++x)
      for (std::size_t y = 0; y < a.order(); ++y) same &= a.mul(element(x), element(y)) == b.mul(element(x), element(y));
    CHECK(same);
  }
}

TEST_CASE("g4 beyond the default cap") {
  const auto d = g4(3, 4, 2, 2, 1, 0);
  CHECK_THROWS_AS(build(d), GroupTooLargeError);
  const auto g = build(d, BuildOptions{.max_order = 6561});
  CHECK(g.order() == 6561);
  CHECK(verify_presentation(g, d).all_pass());
}

TEST_CASE("grid invariants") {
  for (const auto& d : core_grid()) {
    CAPTURE(to_string(d));
    const auto g = build(d);
    CHECK(static_cast<std::int64_t>(g.order()) == expected_order(d));
    CHECK_NOTHROW(check_group_axioms(g));
    const auto report = verify_presentation(g, d);
    for (const auto& r : report.relations) {
      CAPTURE(r.relation);
      CHECK(r.holds);
    }
    if (d.family == Family::g1 || d.family == Family::g2 || d.family == Family::g3 || d.family == Family::g4) {
      const auto all = whole_group(g);
      const auto derived = commutator_subgroup(g, all, all);
      CHECK_FALSE(derived.is_trivial());
      CHECK(commutator_subgroup(g, derived, all).is_trivial());
      CHECK(nilpotency_class(g) == 2);
      const auto p = d.param("p");
      const auto comm_order = element_order(g, g.commutator(g.generator("a"), g.generator("b")));
      CHECK(static_cast<std::int64_t>(comm_order) == ipow(p, int(d.param("gamma"))));
      CHECK(static_cast<std::int64_t>(derived.size()) == ipow(p, int(d.param("gamma"))));
    }
  }
}
