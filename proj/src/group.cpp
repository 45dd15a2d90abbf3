#include "davlab/group.hpp"

#include "davlab/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace davlab {

FiniteGroup::FiniteGroup(std::vector<Element> table, std::vector<std::string> labels,
                         std::vector<NamedElement> generators, std::optional<int> prime)
    : order_(labels.size()), table_(std::move(table)), labels_(std::move(labels)),
      generators_(std::move(generators)), prime_(prime) {
  if (order_ == 0 || table_.size() != order_ * order_)
    throw ConsistencyError("multiplication table size does not match the element count");
  columns_.resize(table_.size());
  inverse_.assign(order_, kIdentity);
  for (std::size_t x = 0; x < order_; ++x) {
    for (std::size_t y = 0; y < order_; ++y) {
      const auto xy = table_[x * order_ + y];
      if (index(xy) >= order_) throw ConsistencyError("table entry out of range");
      columns_[y * order_ + x] = xy;
      if (xy == kIdentity) inverse_[x] = element(y);
    }
  }
}

Element FiniteGroup::pow(Element x, std::int64_t k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  Element result = kIdentity;
  while (k > 0) {
    if (k & 1) result = mul(result, x);
    x = mul(x, x);
    k >>= 1;
  }
  return result;
}

Element FiniteGroup::generator(std::string_view name) const {
  for (const auto& g : generators_)
    if (g.name == name) return g.element;
  throw PreconditionError("group has no generator named '" + std::string(name) + "'");
}

std::size_t element_order(const FiniteGroup& g, Element x) {
  std::size_t k = 1;
  for (auto y = x; y != kIdentity; y = g.mul(y, x)) ++k;
  return k;
}

std::size_t exponent(const FiniteGroup& g) {
  std::size_t e = 1;
  for (std::size_t i = 0; i < g.order(); ++i) e = std::lcm(e, element_order(g, element(i)));
  return e;
}

bool is_abelian(const FiniteGroup& g) {
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = x + 1; y < g.order(); ++y)
      if (g.mul(element(x), element(y)) != g.mul(element(y), element(x))) return false;
  return true;
}

// exp(G) = |G| is not enough for non-abelian G (Q_12 has exponent 12).
bool is_cyclic(const FiniteGroup& g) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (element_order(g, element(i)) == g.order()) return true;
  return false;
}

Element product(const FiniteGroup& g, std::span<const Element> terms) {
  Element acc = kIdentity;
  for (auto t : terms) acc = g.mul(acc, t);
  return acc;
}

Element word(const FiniteGroup& g, std::initializer_list<std::pair<Element, std::int64_t>> factors) {
  Element acc = kIdentity;
  for (const auto& [x, k] : factors) acc = g.mul(acc, g.pow(x, k));
  return acc;
}

void check_group_axioms(const FiniteGroup& g) {
  const auto n = g.order();
  std::vector<std::uint8_t> seen(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (auto xy : g.row(element(x))) {
      if (seen[index(xy)]++) throw ConsistencyError("row " + std::to_string(x) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (auto yx : g.right_multiplication(element(x))) {
      if (seen[index(yx)]++) throw ConsistencyError("column " + std::to_string(x) + " is not a permutation");
    }
    if (g.mul(kIdentity, element(x)) != element(x) || g.mul(element(x), kIdentity) != element(x))
      throw ConsistencyError("element 0 is not the identity");
    if (g.mul(element(x), g.inv(element(x))) != kIdentity) throw ConsistencyError("inverse table is wrong");
  }
  const auto assoc = [&](std::size_t x, std::size_t y, std::size_t z) {
    const auto a = element(x), b = element(y), c = element(z);
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
      throw ConsistencyError("associativity fails at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                             std::to_string(z) + ")");
  };
  if (n <= 512) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) assoc(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eedu + n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 100'000; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
}

std::vector<std::string> element_labels(const FiniteGroup& g, std::span<const Element> seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (auto x : seq) out.push_back(g.label(x));
  return out;
}

} // namespace davlab
