#include "davlab/subgroup.hpp"

#include "davlab/errors.hpp"

namespace davlab {

namespace {

// members is the subgroup generated by gens; adds x and re-closes.
void extend_closure(const FiniteGroup& g, ElementSet& members, std::vector<Element>& gens, Element x) {
  if (members.test(index(x))) return;
  gens.push_back(x);
  std::vector<Element> frontier;
  const auto push = [&](Element y) {
    if (!members.test(index(y))) {
      members.set(index(y));
      frontier.push_back(y);
    }
  };
  // Old members are closed under the old generators, so they only need x.
  const auto old = members;
  old.for_each([&](std::size_t i) { push(g.mul(element(i), x)); });
  while (!frontier.empty()) {
    const auto y = frontier.back();
    frontier.pop_back();
    for (auto s : gens) push(g.mul(y, s));
  }
}

ElementSet identity_only(const FiniteGroup& g) {
  ElementSet s(g.order());
  s.set(0);
  return s;
}

} // namespace

Subgroup::Subgroup(const FiniteGroup& parent, ElementSet members)
    : parent_(&parent), members_(std::move(members)), size_(members_.count()) {}

std::vector<Element> Subgroup::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  members_.for_each([&](std::size_t i) { out.push_back(element(i)); });
  return out;
}

std::vector<Element> Subgroup::generators() const {
  auto current = identity_only(*parent_);
  std::vector<Element> gens;
  members_.for_each([&](std::size_t i) {
    if (!current.test(i)) extend_closure(*parent_, current, gens, element(i));
  });
  return gens;
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(g, identity_only(g)); }

Subgroup whole_group(const FiniteGroup& g) {
  ElementSet all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all.set(i);
  return Subgroup(g, std::move(all));
}

Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> gens) {
  auto members = identity_only(g);
  std::vector<Element> used;
  for (auto x : gens) extend_closure(g, members, used, x);
  return Subgroup(g, std::move(members));
}

Subgroup subgroup_closure(const FiniteGroup& g, const ElementSet& elements) {
  auto members = identity_only(g);
  std::vector<Element> used;
  elements.for_each([&](std::size_t i) { extend_closure(g, members, used, element(i)); });
  return Subgroup(g, std::move(members));
}

Subgroup normal_closure(const FiniteGroup& g, const Subgroup& h, std::span<const Element> by) {
  auto members = identity_only(g);
  std::vector<Element> gens;
  for (auto x : h.generators()) extend_closure(g, members, gens, x);
  // A subgroup is normalized by `by` once every conjugate of each generator
  // lies in it; gens grows while we scan it.
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (auto b : by) extend_closure(g, members, gens, g.conjugate(gens[i], b));
  return Subgroup(g, std::move(members));
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  const auto hg = h.generators();
  const auto kg = k.generators();
  std::vector<Element> commutators;
  for (auto x : hg)
    for (auto y : kg) commutators.push_back(g.commutator(x, y));
  std::vector<Element> joint = hg;
  joint.insert(joint.end(), kg.begin(), kg.end());
  return normal_closure(g, subgroup_closure(g, commutators), joint);
}

ElementSet power_set(const FiniteGroup& g, const Subgroup& h, std::int64_t k) {
  ElementSet out(g.order());
  h.members().for_each([&](std::size_t i) { out.set(index(g.pow(element(i), k))); });
  return out;
}

Subgroup power_subgroup(const FiniteGroup& g, const Subgroup& h, std::int64_t k) {
  return subgroup_closure(g, power_set(g, h, k));
}

Subgroup product_subgroup(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  auto gens = h.generators();
  const auto kg = k.generators();
  gens.insert(gens.end(), kg.begin(), kg.end());
  return subgroup_closure(g, gens);
}

bool is_subgroup_of(const Subgroup& k, const Subgroup& h) { return k.members().is_subset_of(h.members()); }

bool is_normal_in(const Subgroup& k, const Subgroup& h) {
  const auto& g = k.parent();
  const auto kg = k.generators();
  for (auto b : h.generators())
    for (auto x : kg)
      if (!k.contains(g.conjugate(x, b))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) { return is_normal_in(h, whole_group(g)); }

std::size_t quotient_order(const Subgroup& h, const Subgroup& k) {
  if (!is_subgroup_of(k, h)) throw PreconditionError("quotient_order: K is not contained in H");
  if (!is_normal_in(k, h)) throw PreconditionError("quotient_order: K is not normal in H");
  return h.size() / k.size();
}

Subgroup center(const FiniteGroup& g) {
  const auto gens = whole_group(g).generators();
  ElementSet z(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    bool central = true;
    for (auto s : gens)
      if (g.mul(element(i), s) != g.mul(s, element(i))) {
        central = false;
        break;
      }
    if (central) z.set(i);
  }
  return Subgroup(g, std::move(z));
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{whole_group(g)};
  const auto all = series.front();
  while (true) {
    auto next = commutator_subgroup(g, series.back(), all);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<int> nilpotency_class(const FiniteGroup& g) {
  const auto series = lower_central_series(g);
  if (!series.back().is_trivial()) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

} // namespace davlab
