#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace davlab {

/// One line of the JSON-lines cache. `value` holds an integer or a boolean.
struct ResultRecord {
  std::string descriptor;
  /// D, Dprime, E, DA, L, L_formula, witness_check or oracle_check.
  std::string invariant;
  nlohmann::json value;
  bool exact = true;
  std::optional<std::vector<int>> weight_set;
  std::optional<std::vector<std::string>> witness;
  std::string tool_version;
  std::int64_t elapsed_ms = 0;
  std::string timestamp;
};

nlohmann::json to_json(const ResultRecord& r);
/// Throws nlohmann::json exceptions or Error on a malformed record.
ResultRecord record_from_json(const nlohmann::json& j);

/// Record stamped with the tool version and the current time.
ResultRecord make_record(std::string descriptor, std::string invariant, nlohmann::json value, bool exact,
                         std::int64_t elapsed_ms);

/// Current UTC time, e.g. "2026-10-19T08:15:02Z".
std::string iso_timestamp();

/// --cache, then DAVLAB_CACHE, then ./davlab-cache.jsonl.
std::filesystem::path resolve_cache_path(const std::optional<std::string>& flag);

/// Append-only result store. The file is read once on construction; lines
/// that do not parse are skipped and reported through warnings().
class ResultCache {
public:
  explicit ResultCache(std::filesystem::path path);

  /// Latest record with this key written by the same tool major version.
  std::optional<ResultRecord> get(const std::string& descriptor, const std::string& invariant,
                                  const std::optional<std::vector<int>>& weight_set = std::nullopt) const;
  /// Appends one line with a single write. Throws IoError if the file cannot
  /// be opened or written.
  void put(const ResultRecord& record);

  const std::filesystem::path& path() const { return path_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return records_.size(); }

private:
  std::filesystem::path path_;
  std::vector<ResultRecord> records_;
  std::vector<std::string> warnings_;
};

/// Leading integer of "1.0.0"; nullopt when there is none.
std::optional<int> version_major(const std::string& version);

} // namespace davlab
