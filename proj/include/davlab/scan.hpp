#pragma once

#include "davlab/cache.hpp"
#include "davlab/descriptor.hpp"
#include "davlab/zerosum.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace davlab {

enum class ScanStatus { confirmed, consistent, refuted };

/// "CONFIRMED", "CONSISTENT" or "REFUTED".
std::string_view status_name(ScanStatus s);

struct ScanRow {
  std::string descriptor;
  std::int64_t order = 0;
  /// Loewy length (direct), for p-groups only.
  std::optional<std::int64_t> loewy;
  std::size_t lower = 1;
  std::string lower_source = "trivial";
  std::optional<std::size_t> upper;
  std::string upper_source;
  /// D(G) when an exact search ran.
  std::optional<std::size_t> exact_value;
  ScanStatus status = ScanStatus::consistent;
  /// Every component came from the cache.
  bool cached = false;
  std::vector<std::string> notes;
};

struct ParamRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

inline constexpr std::int64_t kScanMaxOrder = 729;
inline constexpr std::size_t kScanMaxRows = 1000;
/// Exact searches run only up to this order.
inline constexpr std::size_t kScanSearchCap = 64;

struct ScanGrid {
  std::vector<GroupDescriptor> descriptors;
  /// Valid descriptors dropped for exceeding kScanMaxOrder.
  std::size_t skipped_over_cap = 0;
};

/// "p=3..5,alpha=1..2"; a bare value "gamma=1" means 1..1. Throws ParseError.
std::map<std::string, ParamRange> parse_param_ranges(std::string_view text);
/// "d,q,sd" split on commas. Throws ParseError on unknown family names.
std::vector<std::string> parse_family_list(std::string_view text);

/// D_{2^r}, Q_{2^r}, SD_{2^r}, M_{2^r} for r = 3..5, the remaining Q_4n and
/// SD_8n up to order 64, and g1 (gamma = 1), g2, g3 (sigma = 1) for p in
/// {3, 5} up to order 729.
ScanGrid default_scan_grid();

/// Every valid descriptor of the named families (c, d, q, sd, m2, g1, g2,
/// g3, g4) with parameters in the given ranges, which override per-family
/// defaults. c/d/q/sd/m2 range over "order". Throws GridTooLargeError above
/// kScanMaxRows rows.
ScanGrid scan_grid(const std::vector<std::string>& families, const std::map<std::string, ParamRange>& ranges);

/// Cyclicity read off the descriptor, without building the group.
bool descriptor_is_cyclic(const GroupDescriptor& d);

struct ScanOptions {
  SearchOptions search;
  /// Null disables caching.
  ResultCache* cache = nullptr;
};

/// Construction (by --theorem number) the scan uses for d: 7 for 2-groups of the
/// d/q/sd/m2 families, 1 for the other q/sd orders, 6 for g1/g2/g3.
std::optional<int> default_witness_theorem(const GroupDescriptor& d);

/// CONFIRMED when lower == upper; REFUTED when a verified lower bound exceeds
/// the upper bound, or when an exact D of a p-group falls below L.
ScanStatus scan_verdict(const ScanRow& row);

ScanRow scan_row(const GroupDescriptor& d, const ScanOptions& options);
std::vector<ScanRow> scan(const std::vector<GroupDescriptor>& grid, const ScanOptions& options);

} // namespace davlab
