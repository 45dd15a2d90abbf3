#include "davlab/descriptor.hpp"

#include "davlab/errors.hpp"
#include "davlab/number_theory.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace davlab {

namespace {

struct FamilySyntax {
  Family family;
  std::string_view token;
  std::string_view usage;
};

constexpr std::array<FamilySyntax, 10> kSyntax{{
    {Family::cyclic, "c", "c[n]"},
    {Family::abelian_product, "ab", "ab[n1,n2,...]"},
    {Family::dihedral, "d", "d[2n]"},
    {Family::dicyclic, "q", "q[4n]"},
    {Family::semidihedral, "sd", "sd[8n]"},
    {Family::modular2, "m2", "m2[2^r]"},
    {Family::g1, "g1", "g1[p,alpha,beta,gamma]"},
    {Family::g2, "g2", "g2[p,alpha,beta,gamma]"},
    {Family::g3, "g3", "g3[p,alpha,beta,gamma,sigma]"},
    {Family::g4, "g4", "g4[p,alpha,beta,gamma,rho,sigma]"},
}};

const FamilySyntax& syntax_of(Family f) {
  return *std::find_if(kSyntax.begin(), kSyntax.end(), [f](const auto& s) { return s.family == f; });
}

std::string grammar_hint() {
  std::string hint = "expected one of:";
  for (const auto& s : kSyntax) {
    hint += ' ';
    hint += s.usage;
  }
  return hint;
}

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw ParseError("cannot parse descriptor '" + std::string(text) + "': " + why + " (" + grammar_hint() +
                   ")");
}

void require(bool ok, const std::string& constraint, const GroupDescriptor& d) {
  if (!ok) throw ConstraintError(to_string(d) + " violates " + constraint);
}

GroupDescriptor make(Family f, std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  GroupDescriptor d;
  d.family = f;
  for (const auto& [k, v] : kv) d.params[k] = v;
  return d;
}

} // namespace

std::string_view family_name(Family f) {
  switch (f) {
  case Family::cyclic: return "cyclic";
  case Family::abelian_product: return "abelian_product";
  case Family::dihedral: return "dihedral";
  case Family::dicyclic: return "dicyclic";
  case Family::semidihedral: return "semidihedral";
  case Family::modular2: return "modular2";
  case Family::g1: return "g1";
  case Family::g2: return "g2";
  case Family::g3: return "g3";
  case Family::g4: return "g4";
  }
  return "?";
}

std::int64_t GroupDescriptor::param(std::string_view name) const {
  auto it = params.find(std::string(name));
  if (it == params.end())
    throw PreconditionError("descriptor " + to_string(*this) + " has no parameter '" + std::string(name) + "'");
  return it->second;
}

GroupDescriptor parse_descriptor(std::string_view text) {
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.empty() || text.back() != ']')
    parse_fail(text, "missing [...] parameter list");
  const auto token = text.substr(0, open);
  auto it = std::find_if(kSyntax.begin(), kSyntax.end(), [&](const auto& s) { return s.token == token; });
  if (it == kSyntax.end()) parse_fail(text, "unknown family '" + std::string(token) + "'");

  std::vector<std::int64_t> values;
  auto body = text.substr(open + 1, text.size() - open - 2);
  while (true) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    std::int64_t v = 0;
    const auto* first = item.data();
    const auto* last = item.data() + item.size();
    if (item.empty() || item.front() == '+' || item.front() == '-')
      parse_fail(text, "parameters must be unsigned decimal integers");
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) parse_fail(text, "bad integer '" + std::string(item) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }

  const auto arity = [&](std::size_t n) {
    if (values.size() != n)
      parse_fail(text, std::string(it->usage) + " takes " + std::to_string(n) + " parameter(s)");
  };

  switch (it->family) {
  case Family::cyclic: arity(1); return cyclic(values[0]);
  case Family::abelian_product: return abelian_product(values);
  case Family::dihedral: arity(1); return dihedral_of_order(values[0]);
  case Family::dicyclic: arity(1); return dicyclic_of_order(values[0]);
  case Family::semidihedral: arity(1); return semidihedral_of_order(values[0]);
  case Family::modular2: arity(1); return modular2_of_order(values[0]);
  case Family::g1: arity(4); return g1(int(values[0]), int(values[1]), int(values[2]), int(values[3]));
  case Family::g2: arity(4); return g2(int(values[0]), int(values[1]), int(values[2]), int(values[3]));
  case Family::g3:
    arity(5);
    return g3(int(values[0]), int(values[1]), int(values[2]), int(values[3]), int(values[4]));
  case Family::g4:
    arity(6);
    return g4(int(values[0]), int(values[1]), int(values[2]), int(values[3]), int(values[4]), int(values[5]));
  }
  parse_fail(text, "unreachable");
}

std::string to_string(const GroupDescriptor& d) {
  std::ostringstream out;
  out << syntax_of(d.family).token << '[';
  const auto p = [&](const char* k) { return d.params.at(k); };
  switch (d.family) {
  case Family::cyclic: out << p("n"); break;
  case Family::abelian_product:
    for (std::size_t i = 0; i < d.factors.size(); ++i) out << (i ? "," : "") << d.factors[i];
    break;
  case Family::dihedral: out << 2 * p("n"); break;
  case Family::dicyclic: out << 4 * p("n"); break;
  case Family::semidihedral: out << 8 * p("n"); break;
  case Family::modular2: out << (std::int64_t{1} << p("r")); break;
  case Family::g1:
  case Family::g2:
    out << p("p") << ',' << p("alpha") << ',' << p("beta") << ',' << p("gamma");
    break;
  case Family::g3:
    out << p("p") << ',' << p("alpha") << ',' << p("beta") << ',' << p("gamma") << ',' << p("sigma");
    break;
  case Family::g4:
    out << p("p") << ',' << p("alpha") << ',' << p("beta") << ',' << p("gamma") << ',' << p("rho") << ','
        << p("sigma");
    break;
  }
  out << ']';
  return out.str();
}

void validate_descriptor(const GroupDescriptor& d) {
  const auto p = [&](const char* k) { return d.params.at(k); };
  switch (d.family) {
  case Family::cyclic: require(p("n") >= 1, "n >= 1", d); break;
  case Family::abelian_product:
    require(!d.factors.empty(), "at least one factor", d);
    for (auto f : d.factors) require(f >= 1, "every factor >= 1", d);
    break;
  case Family::dihedral: require(p("n") >= 2, "order 2n with n >= 2", d); break;
  case Family::dicyclic: require(p("n") >= 2, "n >= 2", d); break;
  case Family::semidihedral: require(p("n") >= 2, "n >= 2", d); break;
  case Family::modular2: require(p("r") >= 4, "r >= 4", d); break;
  case Family::g1:
  case Family::g2:
  case Family::g3:
  case Family::g4: {
    require(p("p") >= 3 && is_prime(p("p")), "p odd prime", d);
    const auto a = p("alpha"), b = p("beta"), c = p("gamma");
    if (d.family == Family::g1) {
      require(a >= b && b >= c && c >= 1, "alpha >= beta >= gamma >= 1", d);
    } else if (d.family == Family::g2) {
      require(a >= 2 * c, "alpha >= 2*gamma", d);
      require(b >= c && c >= 1, "beta >= gamma >= 1", d);
    } else if (d.family == Family::g3) {
      const auto s = p("sigma");
      require(b >= c && c > s && s >= 1, "beta >= gamma > sigma >= 1", d);
      require(a + s >= 2 * c, "alpha + sigma >= 2*gamma", d);
    } else {
      const auto rho = p("rho"), s = p("sigma");
      require(a > b && b >= c && c >= 1, "alpha > beta >= gamma >= 1", d);
      require(0 <= s && s < rho && rho < std::min(c, s + a - b), "0 <= sigma < rho < min(gamma, sigma + alpha - beta)",
              d);
    }
    break;
  }
  }
}

std::int64_t expected_order(const GroupDescriptor& d) {
  const auto p = [&](const char* k) { return d.params.at(k); };
  switch (d.family) {
  case Family::cyclic: return p("n");
  case Family::abelian_product: {
    std::int64_t n = 1;
    for (auto f : d.factors) n *= f;
    return n;
  }
  case Family::dihedral: return 2 * p("n");
  case Family::dicyclic: return 4 * p("n");
  case Family::semidihedral: return 8 * p("n");
  case Family::modular2: return std::int64_t{1} << p("r");
  case Family::g1:
  case Family::g4: return ipow(p("p"), int(p("alpha") + p("beta") + p("gamma")));
  case Family::g2: return ipow(p("p"), int(p("alpha") + p("beta")));
  case Family::g3: return ipow(p("p"), int(p("alpha") + p("beta") + p("sigma")));
  }
  return 0;
}

std::optional<int> descriptor_prime(const GroupDescriptor& d) {
  switch (d.family) {
  case Family::g1:
  case Family::g2:
  case Family::g3:
  case Family::g4: return int(d.params.at("p"));
  default: break;
  }
  const auto n = expected_order(d);
  if (n <= 1) return std::nullopt;
  std::int64_t q = 2;
  while (n % q != 0) ++q;
  if (log_exact(n, q)) return int(q);
  return std::nullopt;
}

std::optional<int> two_power_exponent(const GroupDescriptor& d) { return log_exact(expected_order(d), 2); }

GroupDescriptor cyclic(std::int64_t n) { return make(Family::cyclic, {{"n", n}}); }

GroupDescriptor abelian_product(std::vector<std::int64_t> factors) {
  GroupDescriptor d;
  d.family = Family::abelian_product;
  for (std::size_t i = 0; i < factors.size(); ++i) d.params["n" + std::to_string(i + 1)] = factors[i];
  d.factors = std::move(factors);
  return d;
}

namespace {
GroupDescriptor order_family(Family f, std::int64_t order, std::int64_t divisor, const char* what) {
  if (order <= 0 || order % divisor != 0)
    throw ParseError(std::string(what) + " order must be a positive multiple of " + std::to_string(divisor) +
                     ", got " + std::to_string(order));
  return make(f, {{"n", order / divisor}});
}
} // namespace

GroupDescriptor dihedral_of_order(std::int64_t order) { return order_family(Family::dihedral, order, 2, "d"); }
GroupDescriptor dicyclic_of_order(std::int64_t order) { return order_family(Family::dicyclic, order, 4, "q"); }
GroupDescriptor semidihedral_of_order(std::int64_t order) {
  return order_family(Family::semidihedral, order, 8, "sd");
}

GroupDescriptor modular2_of_order(std::int64_t order) {
  const auto r = log_exact(order, 2);
  if (!r) throw ParseError("m2 order must be a power of two, got " + std::to_string(order));
  return make(Family::modular2, {{"r", *r}});
}

GroupDescriptor g1(int p, int alpha, int beta, int gamma) {
  return make(Family::g1, {{"p", p}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}});
}
GroupDescriptor g2(int p, int alpha, int beta, int gamma) {
  return make(Family::g2, {{"p", p}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}});
}
GroupDescriptor g3(int p, int alpha, int beta, int gamma, int sigma) {
  return make(Family::g3, {{"p", p}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"sigma", sigma}});
}
GroupDescriptor g4(int p, int alpha, int beta, int gamma, int rho, int sigma) {
  return make(Family::g4,
              {{"p", p}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"rho", rho}, {"sigma", sigma}});
}

} // namespace davlab
