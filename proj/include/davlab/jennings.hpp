#pragma once

#include "davlab/descriptor.hpp"
#include "davlab/group.hpp"
#include "davlab/subgroup.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace davlab {

/// Jennings data of a finite p-group: the M-series M_1 = G > ... > M_{d+1} = 1,
/// exponents e_i with |M_i / M_{i+1}| = p^e_i, the Loewy polynomial
/// coefficients c_0..c_m, and the Loewy length L = m + 1.
struct JenningsData {
  std::vector<Subgroup> series;
  std::vector<int> exponents;
  std::vector<std::int64_t> coefficients;
  std::int64_t loewy_length = 1;
  int prime = 0;
};

/// M_1 = G, M_n = [M_{n-1}, G] M_{ceil(n/p)}^(p), up to and including the first
/// trivial term. Throws NotPGroupError unless |G| is a power of p.
std::vector<Subgroup> m_series(const FiniteGroup& g, int p);

/// e_i = log_p |M_i / M_{i+1}|, zeros included, for i = 1..d.
std::vector<int> jennings_exponents(std::span<const Subgroup> series, int p);

/// 1 + (p-1) * sum i * e_i.
std::int64_t loewy_length(const FiniteGroup& g, int p);
std::int64_t loewy_length_from_exponents(std::span<const int> exponents, int p);

/// Coefficients of prod_i (1 + x^i + ... + x^((p-1)i))^(e_i).
std::vector<std::int64_t> loewy_polynomial(std::span<const int> exponents, int p);

JenningsData jennings(const FiniteGroup& g, int p);

/// Closed-form Loewy length for g1, g2, g3 and the dihedral, generalized
/// quaternion, semidihedral and modular 2-groups of order 2^r. Throws
/// NoFormulaError for other descriptors.
std::int64_t loewy_formula(const GroupDescriptor& d);

/// For each i in 1..d: h^p in M_{i+1} and [h,k] in M_{i+1} for all h, k in M_i.
std::vector<bool> elementary_abelian_quotients(const FiniteGroup& g, std::span<const Subgroup> series, int p);

struct IndexComparison {
  std::size_t index = 0; // 1-based series index, or the exponent s
  std::size_t predicted_size = 0;
  std::size_t computed_size = 0;
  bool equal = false;
};

struct MSeriesReport {
  std::vector<IndexComparison> entries;
  /// Set when the computed chain length disagrees with the series length
  /// given by the family's closed form (informational).
  std::optional<std::string> note;

  bool all_equal() const {
    for (const auto& e : entries)
      if (!e.equal) return false;
    return true;
  }
};

/// Compares every computed M_i with the class-two prediction
/// M_i = gamma_2^(p^s) G^(p^s) for 2p^(s-1)+1 <= i <= p^s and
/// M_i = gamma_2^(p^s) G^(p^(s+1)) for p^s+1 <= i <= 2p^s (M_2 = gamma_2 G^(p)).
/// Requires a g1..g4 descriptor; throws WrongFamilyError otherwise.
MSeriesReport mseries_closed_form_check(const FiniteGroup& g, const GroupDescriptor& d);

struct PowerComparison {
  int s = 0;
  std::size_t generated_size = 0; // G^(p^s), generated by all p^s-th powers
  std::size_t three_generator_size = 0;
  bool generated_equals_three = false;
  bool generated_equals_power_set = false;
};

struct PowerReport {
  std::vector<PowerComparison> entries;

  bool all_equal() const {
    for (const auto& e : entries)
      if (!e.generated_equals_three || !e.generated_equals_power_set) return false;
    return true;
  }
};

/// For s = 1, 2, ... until G^(p^s) is trivial, compares G^(p^s) with
/// <a^(p^s), b^(p^s), [a,b]^(p^s)> and with the set of p^s-th powers.
PowerReport power_generators_check(const FiniteGroup& g, const GroupDescriptor& d);

} // namespace davlab
