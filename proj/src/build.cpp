#include "davlab/group.hpp"

#include "davlab/errors.hpp"
#include "davlab/number_theory.hpp"

#include <algorithm>
#include <numeric>

namespace davlab {

namespace {

using Vec = std::vector<std::int64_t>;

// Abelian group on g_0..g_{k-1} with relative orders m_i and power relations
// g_i^(m_i) = carry_i, where carry_i only involves later generators.
struct AbelianBase {
  std::vector<std::string> names;
  std::vector<std::int64_t> orders;
  std::vector<Vec> carries;

  std::size_t rank() const { return orders.size(); }

  std::size_t size() const {
    return std::accumulate(orders.begin(), orders.end(), std::size_t{1},
                           [](std::size_t acc, std::int64_t m) { return acc * static_cast<std::size_t>(m); });
  }

  Vec normalize(Vec v) const {
    for (std::size_t i = 0; i < rank(); ++i) {
      const auto m = orders[i];
      auto q = v[i] / m;
      if (v[i] % m < 0) --q;
      v[i] -= q * m;
      if (q != 0 && !carries[i].empty())
        for (std::size_t j = i + 1; j < rank(); ++j) v[j] += q * carries[i][j];
    }
    return v;
  }

  std::size_t encode(const Vec& v) const {
    std::size_t idx = 0;
    for (std::size_t i = rank(); i-- > 0;) idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(v[i]);
    return idx;
  }

  Vec decode(std::size_t idx) const {
    Vec v(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      v[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(orders[i]));
      idx /= static_cast<std::size_t>(orders[i]);
    }
    return v;
  }

  Vec unit(std::size_t i) const {
    Vec v(rank(), 0);
    v[i] = 1;
    return v;
  }
};

// N . <t> with N abelian, t^-1 x t given on the generators of N, and
// t^top_order = top_power in N. Element (n, j) stands for n t^j.
struct CyclicExtension {
  AbelianBase base;
  std::string top_name;
  std::int64_t top_order = 1;
  std::vector<Vec> action;
  Vec top_power;
};

Vec combine(const AbelianBase& base, const Vec& coeffs, const std::vector<Vec>& images) {
  Vec out(base.rank(), 0);
  for (std::size_t i = 0; i < base.rank(); ++i)
    for (std::size_t j = 0; j < base.rank(); ++j) out[j] += coeffs[i] * images[i][j];
  return base.normalize(out);
}

std::string label_for(const AbelianBase& base, const Vec& v, const std::string& top, std::int64_t j) {
  std::string s;
  const auto append = [&](const std::string& name, std::int64_t e) {
    if (e == 0) return;
    if (!s.empty()) s += ' ';
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  };
  for (std::size_t i = 0; i < base.rank(); ++i) append(base.names[i], v[i]);
  append(top, j);
  return s.empty() ? "1" : s;
}

FiniteGroup assemble(const CyclicExtension& ext, const std::vector<std::string>& generator_names,
                     std::optional<int> prime) {
  const auto& base = ext.base;
  const auto k = base.rank();
  if (ext.action.size() != k || base.names.size() != k || base.carries.size() != k)
    throw ConsistencyError("extension data does not match the base rank");
  for (const auto& image : ext.action)
    if (image.size() != k) throw ConsistencyError("action image has the wrong rank");
  for (std::size_t i = 0; i < k; ++i)
    if (!base.carries[i].empty())
      for (std::size_t j = 0; j <= i; ++j)
        if (base.carries[i][j] != 0) throw ConsistencyError("carry relation must involve later generators only");

  const auto nsize = base.size();
  const auto m = static_cast<std::size_t>(ext.top_order);
  const auto n = nsize * m;

  std::vector<Vec> vecs(nsize);
  for (std::size_t i = 0; i < nsize; ++i) vecs[i] = base.decode(i);

  // The action must respect the power relations of N.
  for (std::size_t i = 0; i < k; ++i) {
    Vec lhs(k, 0);
    lhs[i] = base.orders[i];
    Vec rhs = base.carries[i].empty() ? Vec(k, 0) : base.carries[i];
    if (combine(base, lhs, ext.action) != combine(base, rhs, ext.action))
      throw ConsistencyError("conjugation action is not well defined on " + base.names[i]);
  }

  std::vector<std::size_t> theta(nsize), psi(nsize, nsize);
  for (std::size_t i = 0; i < nsize; ++i) theta[i] = base.encode(combine(base, vecs[i], ext.action));
  for (std::size_t i = 0; i < nsize; ++i) {
    if (psi[theta[i]] != nsize) throw ConsistencyError("conjugation action is not bijective");
    psi[theta[i]] = i;
  }

  const auto z = ext.top_power.empty() ? std::size_t{0} : base.encode(base.normalize(ext.top_power));
  if (theta[z] != z) throw ConsistencyError("t^m is not fixed by conjugation");

  std::vector<std::vector<std::size_t>> psi_pow(m + 1, std::vector<std::size_t>(nsize));
  std::iota(psi_pow[0].begin(), psi_pow[0].end(), std::size_t{0});
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 0; i < nsize; ++i) psi_pow[j][i] = psi[psi_pow[j - 1][i]];
  if (psi_pow[m] != psi_pow[0]) throw ConsistencyError("action order does not divide the top generator order");

  const auto add = [&](std::size_t u, std::size_t v) {
    Vec r = vecs[u];
    for (std::size_t i = 0; i < k; ++i) r[i] += vecs[v][i];
    return base.encode(base.normalize(std::move(r)));
  };

  std::vector<Element> table(n * n);
  for (std::size_t j1 = 0; j1 < m; ++j1) {
    for (std::size_t n1 = 0; n1 < nsize; ++n1) {
      const auto x = j1 * nsize + n1;
      for (std::size_t j2 = 0; j2 < m; ++j2) {
        auto j = j1 + j2;
        const bool wrap = j >= m;
        if (wrap) j -= m;
        for (std::size_t n2 = 0; n2 < nsize; ++n2) {
          auto prod = add(n1, psi_pow[j1][n2]);
          if (wrap && z != 0) prod = add(prod, z);
          table[x * n + j2 * nsize + n2] = element(j * nsize + prod);
        }
      }
    }
  }

  std::vector<std::string> labels(n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < nsize; ++i)
      labels[j * nsize + i] = label_for(base, vecs[i], ext.top_name, static_cast<std::int64_t>(j));

  std::vector<NamedElement> gens;
  for (const auto& name : generator_names) {
    if (name == ext.top_name) {
      gens.push_back({name, element(m > 1 ? nsize : 0)});
      continue;
    }
    auto it = std::find(base.names.begin(), base.names.end(), name);
    if (it == base.names.end()) throw ConsistencyError("unknown generator " + name);
    const auto i = static_cast<std::size_t>(it - base.names.begin());
    gens.push_back({name, element(base.encode(base.normalize(base.unit(i))))});
  }

  FiniteGroup g(std::move(table), std::move(labels), std::move(gens), prime);
  check_group_axioms(g);
  return g;
}

AbelianBase cyclic_base(std::string name, std::int64_t order) { return {{std::move(name)}, {order}, {Vec{}}}; }

// Extension of <y> of the given order by an element x of order 2 modulo <y>,
// with x^-1 y x = y^e and x^2 = y^s.
FiniteGroup metacyclic_2(std::int64_t y_order, std::int64_t e, std::int64_t s, std::optional<int> prime) {
  CyclicExtension ext;
  ext.base = cyclic_base("y", y_order);
  ext.top_name = "x";
  ext.top_order = 2;
  ext.action = {Vec{e}};
  ext.top_power = Vec{s};
  return assemble(ext, {"x", "y"}, prime);
}

std::int64_t pw(const GroupDescriptor& d, const char* exp_name) {
  return ipow(d.param("p"), static_cast<int>(d.param(exp_name)));
}

} // namespace

FiniteGroup build(const GroupDescriptor& d, const BuildOptions& options) {
  validate_descriptor(d);
  const auto order = expected_order(d);
  if (order > static_cast<std::int64_t>(options.max_order))
    throw GroupTooLargeError(to_string(d) + " has order " + std::to_string(order) + ", above the cap of " +
                             std::to_string(options.max_order));
  const auto prime = descriptor_prime(d);

  switch (d.family) {
  case Family::cyclic: {
    CyclicExtension ext;
    ext.base = cyclic_base("g", d.param("n"));
    ext.action = {Vec{1}};
    return assemble(ext, {"g"}, prime);
  }
  case Family::abelian_product: {
    CyclicExtension ext;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      names.push_back("g" + std::to_string(i + 1));
      ext.base.names.push_back(names.back());
      ext.base.orders.push_back(d.factors[i]);
      ext.base.carries.emplace_back();
    }
    for (std::size_t i = 0; i < d.factors.size(); ++i) ext.action.push_back(ext.base.unit(i));
    return assemble(ext, names, prime);
  }
  case Family::dihedral: return metacyclic_2(d.param("n"), -1, 0, prime);
  case Family::dicyclic: return metacyclic_2(2 * d.param("n"), -1, d.param("n"), prime);
  case Family::semidihedral: return metacyclic_2(4 * d.param("n"), 2 * d.param("n") - 1, 0, prime);
  case Family::modular2: {
    const auto r = d.param("r");
    return metacyclic_2(std::int64_t{1} << (r - 1), (std::int64_t{1} << (r - 2)) + 1, 0, prime);
  }
  case Family::g1:
  case Family::g4: {
    // b^-1 a b = a c with c = [a,b] central.
    CyclicExtension ext;
    const auto p = d.param("p");
    ext.base.names = {"a", "c"};
    ext.base.orders = {pw(d, "alpha"), pw(d, "gamma")};
    ext.base.carries = {Vec{}, Vec{}};
    ext.top_name = "b";
    ext.top_order = pw(d, "beta");
    ext.action = {Vec{1, 1}, Vec{0, 1}};
    if (d.family == Family::g4) {
      ext.base.carries[0] = Vec{0, ipow(p, int(d.param("rho")))};
      ext.top_power = Vec{0, ipow(p, int(d.param("sigma")))};
    }
    return assemble(ext, {"a", "b", "c"}, prime);
  }
  case Family::g2: {
    // b^-1 a b = a [a,b] = a^(1 + p^(alpha-gamma)).
    CyclicExtension ext;
    const auto shift = ipow(d.param("p"), int(d.param("alpha") - d.param("gamma")));
    ext.base = cyclic_base("a", pw(d, "alpha"));
    ext.top_name = "b";
    ext.top_order = pw(d, "beta");
    ext.action = {Vec{1 + shift}};
    return assemble(ext, {"a", "b"}, prime);
  }
  case Family::g3: {
    // [a,b] = a^P c and [c,b] = a^(-P^2) c^(-P) with P = p^(alpha-gamma), so
    // b^-1 a b = a^(1+P) c and b^-1 c b = a^(-P^2) c^(1-P).
    CyclicExtension ext;
    const auto shift = ipow(d.param("p"), int(d.param("alpha") - d.param("gamma")));
    ext.base.names = {"a", "c"};
    ext.base.orders = {pw(d, "alpha"), pw(d, "sigma")};
    ext.base.carries = {Vec{}, Vec{}};
    ext.top_name = "b";
    ext.top_order = pw(d, "beta");
    ext.action = {Vec{1 + shift, 1}, Vec{-shift * shift, 1 - shift}};
    return assemble(ext, {"a", "b", "c"}, prime);
  }
  }
  throw ConsistencyError("unhandled family");
}

FiniteGroup build_semidihedral_two_power(int r) {
  if (r < 4) throw ConstraintError("SD_{2^r} needs r >= 4");
  if ((std::int64_t{1} << r) > 4096) throw GroupTooLargeError("SD_{2^r} above the order cap");
  const auto y_order = std::int64_t{1} << (r - 1);
  // x is an involution, so the action exponent is its own inverse.
  return metacyclic_2(y_order, (std::int64_t{1} << (r - 2)) - 1, 0, 2);
}

} // namespace davlab
