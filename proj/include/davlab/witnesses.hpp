#pragma once

#include "davlab/descriptor.hpp"
#include "davlab/group.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace davlab {

enum class WitnessCase { dicyclic, semidihedral, two_group, g1_3mod4, g1_1mod4, g2, g3_3mod4, g3_1mod4 };

std::string_view case_name(WitnessCase c);

struct WitnessBlock {
  std::string name;
  Element element;
  /// The defining word with fractional exponents already resolved.
  std::string word;
  std::size_t multiplicity;
};

struct WitnessSpec {
  GroupDescriptor descriptor;
  WitnessCase case_tag;
  std::vector<WitnessBlock> blocks;
  /// The Davenport value the construction is meant to attain (length + 1).
  std::size_t target_value;

  std::size_t length() const;
  /// Blocks expanded in order: all copies of the first, then the second, ...
  std::vector<Element> sequence() const;
};

struct WitnessOptions {
  /// Allow G1 with gamma > 1 and G3 with sigma > 1, which no theorem covers.
  bool unverified_explore = false;
};

// Each constructor expects g = build(d).
WitnessSpec witness_theorem1(const FiniteGroup& g, const GroupDescriptor& d);
WitnessSpec witness_theorem7(const FiniteGroup& g, const GroupDescriptor& d);
WitnessSpec witness_g1(const FiniteGroup& g, const GroupDescriptor& d, const WitnessOptions& options = {});
WitnessSpec witness_g2(const FiniteGroup& g, const GroupDescriptor& d);
WitnessSpec witness_g3(const FiniteGroup& g, const GroupDescriptor& d, const WitnessOptions& options = {});
/// Dispatch on theorem number 1, 6 or 7.
WitnessSpec witness_for(int theorem, const FiniteGroup& g, const GroupDescriptor& d,
                        const WitnessOptions& options = {});

/// The congruences satisfied by (x, y, z, w) when k^x l^y m^z n^w = 1.
struct CongruenceSystem {
  WitnessCase case_tag;
  std::int64_t p;
  int alpha;
  int beta;
  /// gamma for G1 systems.
  int gamma;
  /// Exponent of the third modulus: gamma for G1, sigma for G3.
  int third;
  std::int64_t q = 0;
  /// Inclusive upper bounds for x, y, z, w.
  std::array<std::int64_t, 4> ranges{};
};

/// The system matching witness_g1 / witness_g3 for d.
CongruenceSystem congruence_system(const GroupDescriptor& d);

inline constexpr std::int64_t kOracleVariableCap = 10'000;
inline constexpr double kOracleProductCap = 1e10;

/// True iff (0,0,0,0) is the only solution within the ranges, by exhaustive
/// enumeration. BudgetError above the range caps.
bool congruence_oracle(const CongruenceSystem& sys);

/// Whether the discriminant of the case's quadratic form (-4, or -4q with
/// q = least_qnr(p)) is a non-residue modulo the odd prime p.
bool discriminant_check(std::int64_t p, WitnessCase c);

} // namespace davlab
