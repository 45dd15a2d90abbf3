#include "davlab/presentation.hpp"

#include "davlab/number_theory.hpp"
#include "davlab/subgroup.hpp"

namespace davlab {

namespace {

class Checker {
public:
  explicit Checker(const FiniteGroup& g) : g_(g) {}

  void holds(std::string relation, bool ok) { report_.relations.push_back({std::move(relation), ok}); }
  void equal(std::string relation, Element lhs, Element rhs) { holds(std::move(relation), lhs == rhs); }
  void order_of(const std::string& name, Element x, std::int64_t n) {
    holds("o(" + name + ") = " + std::to_string(n), static_cast<std::int64_t>(element_order(g_, x)) == n);
  }
  void generated_by(std::vector<Element> gens) {
    holds("G = <generators>", subgroup_closure(g_, gens).size() == g_.order());
  }

  PresentationReport take() { return std::move(report_); }

private:
  const FiniteGroup& g_;
  PresentationReport report_;
};

} // namespace

PresentationReport verify_presentation(const FiniteGroup& g, const GroupDescriptor& d) {
  Checker check(g);
  check.holds("|G| = " + std::to_string(expected_order(d)),
              static_cast<std::int64_t>(g.order()) == expected_order(d));
  const auto pw = [&](const char* e) { return ipow(d.param("p"), int(d.param(e))); };
  const auto s = [](std::int64_t v) { return std::to_string(v); };

  switch (d.family) {
  case Family::cyclic: {
    const auto x = g.generator("g");
    const auto n = d.param("n");
    check.equal("g^" + s(n) + " = 1", g.pow(x, n), kIdentity);
    check.order_of("g", x, n);
    check.generated_by({x});
    break;
  }
  case Family::abelian_product: {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      const auto name = "g" + s(static_cast<std::int64_t>(i + 1));
      gens.push_back(g.generator(name));
      check.order_of(name, gens.back(), d.factors[i]);
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        check.equal("[g" + s(std::int64_t(i + 1)) + ",g" + s(std::int64_t(j + 1)) + "] = 1",
                    g.commutator(gens[i], gens[j]), kIdentity);
    check.generated_by(gens);
    break;
  }
  case Family::dihedral:
  case Family::dicyclic:
  case Family::semidihedral:
  case Family::modular2: {
    const auto x = g.generator("x");
    const auto y = g.generator("y");
    std::int64_t y_order = 0, action = 0, square = 0;
    if (d.family == Family::dihedral) {
      y_order = d.param("n");
      action = -1;
    } else if (d.family == Family::dicyclic) {
      y_order = 2 * d.param("n");
      action = -1;
      square = d.param("n");
    } else if (d.family == Family::semidihedral) {
      y_order = 4 * d.param("n");
      action = 2 * d.param("n") - 1;
    } else {
      const auto r = d.param("r");
      y_order = std::int64_t{1} << (r - 1);
      action = (std::int64_t{1} << (r - 2)) + 1;
    }
    check.equal(square ? "x^2 = y^" + s(square) : "x^2 = 1", g.pow(x, 2), g.pow(y, square));
    check.equal("y^" + s(y_order) + " = 1", g.pow(y, y_order), kIdentity);
    check.order_of("y", y, y_order);
    check.equal("x^-1 y x = y^" + s(action), g.conjugate(y, x), g.pow(y, action));
    check.generated_by({x, y});
    break;
  }
  case Family::g1: {
    const auto a = g.generator("a"), b = g.generator("b"), c = g.generator("c");
    check.equal("[a,b] = c", g.commutator(a, b), c);
    check.equal("[a,c] = 1", g.commutator(a, c), kIdentity);
    check.equal("[b,c] = 1", g.commutator(b, c), kIdentity);
    check.order_of("a", a, pw("alpha"));
    check.order_of("b", b, pw("beta"));
    check.order_of("c", c, pw("gamma"));
    check.generated_by({a, b});
    break;
  }
  case Family::g2: {
    const auto a = g.generator("a"), b = g.generator("b");
    const auto shift = ipow(d.param("p"), int(d.param("alpha") - d.param("gamma")));
    check.equal("[a,b] = a^" + s(shift), g.commutator(a, b), g.pow(a, shift));
    check.order_of("a", a, pw("alpha"));
    check.order_of("b", b, pw("beta"));
    check.order_of("[a,b]", g.commutator(a, b), pw("gamma"));
    check.generated_by({a, b});
    break;
  }
  case Family::g3: {
    const auto a = g.generator("a"), b = g.generator("b"), c = g.generator("c");
    const auto shift = ipow(d.param("p"), int(d.param("alpha") - d.param("gamma")));
    check.equal("[a,b] = a^" + s(shift) + " c", g.commutator(a, b), word(g, {{a, shift}, {c, 1}}));
    check.equal("[c,b] = a^(-" + s(shift * shift) + ") c^(-" + s(shift) + ")", g.commutator(c, b),
                word(g, {{a, -shift * shift}, {c, -shift}}));
    check.equal("[a,c] = 1", g.commutator(a, c), kIdentity);
    check.order_of("a", a, pw("alpha"));
    check.order_of("b", b, pw("beta"));
    check.order_of("c", c, pw("sigma"));
    check.generated_by({a, b});
    break;
  }
  case Family::g4: {
    const auto a = g.generator("a"), b = g.generator("b");
    const auto ab = g.commutator(a, b);
    check.equal("[a,b]^" + s(pw("gamma")) + " = 1", g.pow(ab, pw("gamma")), kIdentity);
    check.order_of("[a,b]", ab, pw("gamma"));
    check.equal("[a,b,a] = 1", g.commutator(ab, a), kIdentity);
    check.equal("[a,b,b] = 1", g.commutator(ab, b), kIdentity);
    check.equal("a^" + s(pw("alpha")) + " = [a,b]^" + s(pw("rho")), g.pow(a, pw("alpha")), g.pow(ab, pw("rho")));
    check.equal("b^" + s(pw("beta")) + " = [a,b]^" + s(pw("sigma")), g.pow(b, pw("beta")), g.pow(ab, pw("sigma")));
    check.generated_by({a, b});
    break;
  }
  }
  return check.take();
}

} // namespace davlab
