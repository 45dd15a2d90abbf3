#pragma once

#include "davlab/descriptor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace davlab {

/// Index of an element within one FiniteGroup; index 0 is the identity.
enum class Element : std::uint16_t {};

constexpr std::size_t index(Element e) { return static_cast<std::size_t>(e); }
constexpr Element element(std::size_t i) { return static_cast<Element>(i); }
inline constexpr Element kIdentity = Element{0};

struct NamedElement {
  std::string name;
  Element element;
};

/// A finite group stored as its complete multiplication table.
/// Immutable after construction.
class FiniteGroup {
public:
  FiniteGroup(std::vector<Element> table, std::vector<std::string> labels, std::vector<NamedElement> generators,
              std::optional<int> prime);

  std::size_t order() const { return order_; }

  Element mul(Element x, Element y) const { return table_[index(x) * order_ + index(y)]; }
  Element inv(Element x) const { return inverse_[index(x)]; }
  Element pow(Element x, std::int64_t k) const;
  /// [x, y] = x^-1 y^-1 x y.
  Element commutator(Element x, Element y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  Element conjugate(Element x, Element by) const { return mul(mul(inv(by), x), by); }

  /// Row x of the table: y -> x*y.
  std::span<const Element> row(Element x) const { return {table_.data() + index(x) * order_, order_}; }
  /// y -> y*g, materialized as a column of the table.
  std::span<const Element> right_multiplication(Element g) const {
    return {columns_.data() + index(g) * order_, order_};
  }

  const std::string& label(Element x) const { return labels_[index(x)]; }
  std::span<const NamedElement> generators() const { return generators_; }
  Element generator(std::string_view name) const;
  std::optional<int> prime() const { return prime_; }

private:
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> columns_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::vector<NamedElement> generators_;
  std::optional<int> prime_;
};

std::size_t element_order(const FiniteGroup& g, Element x);
std::size_t exponent(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);
bool is_cyclic(const FiniteGroup& g);

/// Left-to-right product of the given elements.
Element product(const FiniteGroup& g, std::span<const Element> terms);

/// Label of each element, in order.
std::vector<std::string> element_labels(const FiniteGroup& g, std::span<const Element> seq);

/// Product x1^k1 x2^k2 ... evaluated left to right.
Element word(const FiniteGroup& g, std::initializer_list<std::pair<Element, std::int64_t>> factors);

/// Latin square, identity and inverse axioms, and associativity (exhaustive
/// up to order 512, 10^5 random triples above). Throws ConsistencyError.
void check_group_axioms(const FiniteGroup& g);

struct BuildOptions {
  std::size_t max_order = 4096;
};

/// Builds the multiplication table for a validated descriptor. Throws
/// ConstraintError, GroupTooLargeError, or ConsistencyError.
FiniteGroup build(const GroupDescriptor& d, const BuildOptions& options = {});

/// SD_{2^r} from x^2 = y^(2^(r-1)) = 1, x^-1 y x = y^(2^(r-2)-1). `build` uses
/// the SD_8n form x^-1 y x = y^(2n-1); the two agree when 8n = 2^r.
FiniteGroup build_semidihedral_two_power(int r);

} // namespace davlab
