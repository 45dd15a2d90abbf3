#include "davlab/witnesses.hpp"

#include "davlab/errors.hpp"
#include "davlab/jennings.hpp"
#include "davlab/number_theory.hpp"

#include <utility>

namespace davlab {

namespace {

struct Factor {
  std::string name;
  Element base;
  std::int64_t exponent;
};

// Evaluates the factors left to right and renders them as "a^-1 b c^2".
WitnessBlock block(const FiniteGroup& g, std::string name, std::vector<Factor> factors, std::int64_t multiplicity) {
  Element e = kIdentity;
  std::string text;
  for (const auto& f : factors) {
    e = g.mul(e, g.pow(f.base, f.exponent));
    if (f.exponent == 0) continue;
    if (!text.empty()) text += ' ';
    text += f.name;
    if (f.exponent != 1) text += "^" + std::to_string(f.exponent);
  }
  return {std::move(name), e, text.empty() ? "1" : text, static_cast<std::size_t>(multiplicity)};
}

void require_family(const GroupDescriptor& d, std::initializer_list<Family> allowed, const char* what) {
  for (auto f : allowed)
    if (d.family == f) return;
  throw WrongFamilyError(std::string(what) + " does not apply to " + to_string(d));
}

void require_built(const FiniteGroup& g, const GroupDescriptor& d) {
  if (static_cast<std::int64_t>(g.order()) != expected_order(d))
    throw PreconditionError("group table does not match " + to_string(d));
}

std::int64_t pw(const GroupDescriptor& d, const char* name) {
  return ipow(d.param("p"), static_cast<int>(d.param(name)));
}

// y^(k) x for the 2-generated families.
WitnessSpec power_then_x(const FiniteGroup& g, const GroupDescriptor& d, WitnessCase tag, std::int64_t k,
                         std::size_t target) {
  const auto x = g.generator("x"), y = g.generator("y");
  WitnessSpec w{d, tag, {}, target};
  w.blocks.push_back(block(g, "y", {{"y", y, 1}}, k));
  w.blocks.push_back(block(g, "x", {{"x", x, 1}}, 1));
  return w;
}

} // namespace

std::string_view case_name(WitnessCase c) {
  switch (c) {
  case WitnessCase::dicyclic: return "dicyclic";
  case WitnessCase::semidihedral: return "semidihedral";
  case WitnessCase::two_group: return "two_group";
  case WitnessCase::g1_3mod4: return "g1_3mod4";
  case WitnessCase::g1_1mod4: return "g1_1mod4";
  case WitnessCase::g2: return "g2";
  case WitnessCase::g3_3mod4: return "g3_3mod4";
  case WitnessCase::g3_1mod4: return "g3_1mod4";
  }
  return "?";
}

std::size_t WitnessSpec::length() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.multiplicity;
  return n;
}

std::vector<Element> WitnessSpec::sequence() const {
  std::vector<Element> out;
  out.reserve(length());
  for (const auto& b : blocks) out.insert(out.end(), b.multiplicity, b.element);
  return out;
}

WitnessSpec witness_theorem1(const FiniteGroup& g, const GroupDescriptor& d) {
  require_family(d, {Family::dicyclic, Family::semidihedral}, "the dicyclic/semidihedral construction");
  require_built(g, d);
  const auto n = d.param("n");
  const std::size_t target = (g.order() + 2) / 2;
  if (d.family == Family::dicyclic) return power_then_x(g, d, WitnessCase::dicyclic, 2 * n - 1, target);
  return power_then_x(g, d, WitnessCase::semidihedral, 4 * n - 1, target);
}

WitnessSpec witness_theorem7(const FiniteGroup& g, const GroupDescriptor& d) {
  require_family(d, {Family::dihedral, Family::dicyclic, Family::semidihedral, Family::modular2},
                 "the 2-group construction");
  require_built(g, d);
  const auto r = two_power_exponent(d);
  if (!r || *r < 3 || (*r < 4 && (d.family == Family::semidihedral || d.family == Family::modular2)))
    throw WrongFamilyError("the 2-group construction needs order 2^r with r >= 3, got " + to_string(d));
  const auto half = std::int64_t{1} << (*r - 1);
  return power_then_x(g, d, WitnessCase::two_group, half - 1, static_cast<std::size_t>(half + 1));
}

WitnessSpec witness_g2(const FiniteGroup& g, const GroupDescriptor& d) {
  require_family(d, {Family::g2}, "the G2 construction");
  require_built(g, d);
  const auto a = g.generator("a"), b = g.generator("b");
  WitnessSpec w{d, WitnessCase::g2, {}, static_cast<std::size_t>(loewy_formula(d))};
  w.blocks.push_back(block(g, "a", {{"a", a, 1}}, pw(d, "alpha") - 1));
  w.blocks.push_back(block(g, "b", {{"b", b, 1}}, pw(d, "beta") - 1));
  return w;
}

WitnessSpec witness_g1(const FiniteGroup& g, const GroupDescriptor& d, const WitnessOptions& options) {
  require_family(d, {Family::g1}, "the G1 construction");
  if (d.param("gamma") != 1 && !options.unverified_explore)
    throw PreconditionError("the G1 construction is proven only for gamma = 1; pass --unverified-explore to try " +
                            to_string(d));
  require_built(g, d);
  const auto p = d.param("p");
  const auto a = g.generator("a"), b = g.generator("b"), c = g.generator("c");
  const auto oc = pw(d, "gamma");
  const auto tag = p % 4 == 3 ? WitnessCase::g1_3mod4 : WitnessCase::g1_1mod4;
  WitnessSpec w{d, tag, {}, static_cast<std::size_t>(loewy_formula(d))};
  const auto ma = pw(d, "alpha") - 1, mb = pw(d, "beta") - 1, mc = oc - 1;
  w.blocks.push_back(block(g, "k", {{"a", a, -1}, {"b", b, 1}, {"c", c, half_exponent(1, oc)}}, ma));
  w.blocks.push_back(block(g, "l", {{"b", b, -1}}, mb));
  if (tag == WitnessCase::g1_3mod4) {
    w.blocks.push_back(block(g, "m", {{"a", a, 1}}, mc));
    w.blocks.push_back(block(g, "n", {{"a", a, 2}, {"b", b, -1}, {"c", c, 1}}, mc));
  } else {
    const auto q = least_qnr(p);
    w.blocks.push_back(block(g, "m", {{"a", a, 1}, {"b", b, q}, {"c", c, half_exponent(-q, oc)}}, mc));
    w.blocks.push_back(block(g, "n", {{"a", a, 1}}, mc));
  }
  return w;
}

WitnessSpec witness_g3(const FiniteGroup& g, const GroupDescriptor& d, const WitnessOptions& options) {
  require_family(d, {Family::g3}, "the G3 construction");
  if (d.param("sigma") != 1 && !options.unverified_explore)
    throw PreconditionError("the G3 construction is proven only for sigma = 1; pass --unverified-explore to try " +
                            to_string(d));
  require_built(g, d);
  const auto p = d.param("p");
  const auto a = g.generator("a"), b = g.generator("b");
  const auto ab = g.commutator(a, b);
  const auto oab = pw(d, "gamma");
  if (static_cast<std::int64_t>(element_order(g, ab)) != oab)
    throw ConsistencyError("o([a,b]) differs from p^gamma in " + to_string(d));
  const auto tag = p % 4 == 3 ? WitnessCase::g3_3mod4 : WitnessCase::g3_1mod4;
  WitnessSpec w{d, tag, {}, static_cast<std::size_t>(loewy_formula(d))};
  const auto ma = pw(d, "alpha") - 1, mb = pw(d, "beta") - 1, ms = pw(d, "sigma") - 1;
  w.blocks.push_back(block(g, "k", {{"a", a, -1}}, ma));
  w.blocks.push_back(block(g, "l", {{"b", b, 1}}, mb));
  if (tag == WitnessCase::g3_3mod4) {
    w.blocks.push_back(block(g, "m", {{"a", a, 1}, {"b", b, 1}, {"[a,b]", ab, half_exponent(-1, oab)}}, ms));
    w.blocks.push_back(block(g, "n", {{"a", a, 2}, {"b", b, 1}, {"[a,b]", ab, -1}}, ms));
  } else {
    const auto q = least_qnr(p);
    w.blocks.push_back(
        block(g, "m", {{"a", a, 1}, {"b", b, q + 1}, {"[a,b]", ab, half_exponent(-(q + 1), oab)}}, ms));
    w.blocks.push_back(block(g, "n", {{"a", a, 1}, {"b", b, 1}, {"[a,b]", ab, half_exponent(-1, oab)}}, ms));
  }
  return w;
}

WitnessSpec witness_for(int theorem, const FiniteGroup& g, const GroupDescriptor& d, const WitnessOptions& options) {
  switch (theorem) {
  case 1: return witness_theorem1(g, d);
  case 7: return witness_theorem7(g, d);
  case 6:
    if (d.family == Family::g1) return witness_g1(g, d, options);
    if (d.family == Family::g2) return witness_g2(g, d);
    if (d.family == Family::g3) return witness_g3(g, d, options);
    throw WrongFamilyError("the class-two constructions cover g1, g2 and g3, not " + to_string(d));
  default: throw PreconditionError("theorem must be 1, 6 or 7, got " + std::to_string(theorem));
  }
}

CongruenceSystem congruence_system(const GroupDescriptor& d) {
  require_family(d, {Family::g1, Family::g3}, "the congruence systems");
  validate_descriptor(d);
  const auto p = d.param("p");
  CongruenceSystem sys{};
  sys.p = p;
  sys.alpha = static_cast<int>(d.param("alpha"));
  sys.beta = static_cast<int>(d.param("beta"));
  sys.gamma = static_cast<int>(d.param("gamma"));
  const bool three = p % 4 == 3;
  if (d.family == Family::g1) {
    sys.case_tag = three ? WitnessCase::g1_3mod4 : WitnessCase::g1_1mod4;
    sys.third = sys.gamma;
  } else {
    sys.case_tag = three ? WitnessCase::g3_3mod4 : WitnessCase::g3_1mod4;
    sys.third = static_cast<int>(d.param("sigma"));
  }
  if (!three) sys.q = least_qnr(p);
  const auto mt = ipow(p, sys.third) - 1;
  sys.ranges = {ipow(p, sys.alpha) - 1, ipow(p, sys.beta) - 1, mt, mt};
  return sys;
}

bool congruence_oracle(const CongruenceSystem& sys) {
  double product = 1;
  for (auto r : sys.ranges) {
    if (r < 0) throw PreconditionError("congruence ranges must be non-negative");
    if (r + 1 > kOracleVariableCap)
      throw BudgetError("congruence range " + std::to_string(r + 1) + " exceeds " + std::to_string(kOracleVariableCap));
    product *= static_cast<double>(r + 1);
  }
  if (product > kOracleProductCap) throw BudgetError("congruence search space exceeds the oracle cap");

  const auto p = sys.p, q = sys.q;
  const auto pa = ipow(p, sys.alpha), pb = ipow(p, sys.beta), pt = ipow(p, sys.third);
  const auto [rx, ry, rz, rw] = sys.ranges;
  const auto trivial = [](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
    return x == 0 && y == 0 && z == 0 && w == 0;
  };

  switch (sys.case_tag) {
  case WitnessCase::g1_3mod4:
  case WitnessCase::g1_1mod4: {
    const bool three = sys.case_tag == WitnessCase::g1_3mod4;
    for (std::int64_t z = 0; z <= rz; ++z)
      for (std::int64_t w = 0; w <= rw; ++w)
        for (std::int64_t x = 0; x <= rx; ++x) {
          if (mod(-x + z + (three ? 2 * w : w), pa) != 0) continue;
          for (std::int64_t y = 0; y <= ry; ++y) {
            if (three) {
              if (mod(x - y - w, pb) != 0) continue;
              if (mod(-2 * (x - y) * (z + 2 * w) + x * x + 2 * w * w, pt) != 0) continue;
            } else {
              if (mod(x - y + q * z, pb) != 0) continue;
              if (mod(-2 * (x - y) * (z + w) - 2 * q * z * w + x * x - q * z * z, pt) != 0) continue;
            }
            if (!trivial(x, y, z, w)) return false;
          }
        }
    return true;
  }
  case WitnessCase::g3_3mod4:
  case WitnessCase::g3_1mod4: {
    const bool three = sys.case_tag == WitnessCase::g3_3mod4;
    const auto shift = ipow(p, sys.alpha - sys.gamma);
    const auto inv2 = half_exponent(1, pa);
    for (std::int64_t y = 0; y <= ry; ++y)
      for (std::int64_t z = 0; z <= rz; ++z)
        for (std::int64_t w = 0; w <= rw; ++w) {
          const auto bracket = three ? -2 * y * (z + 2 * w) - 4 * z * w - (z * z + 2 * w * w)
                                     : -2 * y * (z + w) - 2 * (q + 1) * z * w - (q + 1) * z * z - w * w;
          if (mod(three ? y + z + w : y + (q + 1) * z + w, pb) != 0) continue;
          if (mod(bracket, pt) != 0) continue;
          const auto tail = mod(mod(mod(bracket, pa) * shift, pa) * inv2, pa);
          for (std::int64_t x = 0; x <= rx; ++x) {
            if (mod(-x + z + (three ? 2 * w : w) + tail, pa) != 0) continue;
            if (!trivial(x, y, z, w)) return false;
          }
        }
    return true;
  }
  default: throw PreconditionError("no congruence system for case " + std::string(case_name(sys.case_tag)));
  }
}

bool discriminant_check(std::int64_t p, WitnessCase c) {
  if (p == 2 || !is_prime(p)) throw PreconditionError("discriminant_check needs an odd prime, got " + std::to_string(p));
  std::int64_t disc = 0;
  switch (c) {
  case WitnessCase::g1_3mod4:
  case WitnessCase::g3_3mod4: disc = -4; break;
  case WitnessCase::g1_1mod4:
  case WitnessCase::g3_1mod4: disc = -4 * least_qnr(p); break;
  default: throw PreconditionError("no quadratic form for case " + std::string(case_name(c)));
  }
  return !is_quadratic_residue(mod(disc, p), p);
}

} // namespace davlab
