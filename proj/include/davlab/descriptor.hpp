#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace davlab {

enum class Family {
  cyclic,          // c[n]
  abelian_product, // ab[n1,n2,...]
  dihedral,        // d[2n], order 2n
  dicyclic,        // q[4n], order 4n
  semidihedral,    // sd[8n], order 8n
  modular2,        // m2[2^r]
  g1,              // g1[p,alpha,beta,gamma]
  g2,              // g2[p,alpha,beta,gamma]
  g3,              // g3[p,alpha,beta,gamma,sigma]
  g4,              // g4[p,alpha,beta,gamma,rho,sigma]
};

std::string_view family_name(Family f);

/// Family plus named integer parameters. For the dihedral, dicyclic and
/// semidihedral families `n` is the presentation parameter (orders 2n, 4n,
/// 8n); modular2 stores `r`. Abelian products keep their cyclic factors in
/// order in `factors`.
struct GroupDescriptor {
  Family family = Family::cyclic;
  std::map<std::string, std::int64_t> params;
  std::vector<std::int64_t> factors;

  std::int64_t param(std::string_view name) const;
  bool has(std::string_view name) const { return params.find(std::string(name)) != params.end(); }

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Parses the whitespace-free grammar `c[n]`, `ab[n1,...]`, `d[2n]`,
/// `q[4n]`, `sd[8n]`, `m2[2^r]`, `g1[p,a,b,c]`, `g2[p,a,b,c]`,
/// `g3[p,a,b,c,s]`, `g4[p,a,b,c,rho,sigma]`. The bracketed number of the
/// d/q/sd/m2 families is the group order. Throws ParseError.
GroupDescriptor parse_descriptor(std::string_view text);

/// Canonical spelling, e.g. "g1[3,1,1,1]" or "q[8]".
std::string to_string(const GroupDescriptor& d);

/// Throws ConstraintError naming the violated inequality.
void validate_descriptor(const GroupDescriptor& d);

/// Closed-form group order implied by the presentation.
std::int64_t expected_order(const GroupDescriptor& d);

/// Prime p when the family is a p-group for every valid parameter tuple or
/// when the given parameters make it one.
std::optional<int> descriptor_prime(const GroupDescriptor& d);

/// r with order 2^r, when the order is a power of two.
std::optional<int> two_power_exponent(const GroupDescriptor& d);

// Convenience constructors used by tests and the scan grid.
GroupDescriptor cyclic(std::int64_t n);
GroupDescriptor abelian_product(std::vector<std::int64_t> factors);
GroupDescriptor dihedral_of_order(std::int64_t order);
GroupDescriptor dicyclic_of_order(std::int64_t order);
GroupDescriptor semidihedral_of_order(std::int64_t order);
GroupDescriptor modular2_of_order(std::int64_t order);
GroupDescriptor g1(int p, int alpha, int beta, int gamma);
GroupDescriptor g2(int p, int alpha, int beta, int gamma);
GroupDescriptor g3(int p, int alpha, int beta, int gamma, int sigma);
GroupDescriptor g4(int p, int alpha, int beta, int gamma, int rho, int sigma);

} // namespace davlab
