#include "davlab/cache.hpp"

#include "davlab/errors.hpp"
#include "davlab/version.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>

namespace davlab {

using nlohmann::json;

json to_json(const ResultRecord& r) {
  json j{{"v", kCacheSchemaVersion},
         {"descriptor", r.descriptor},
         {"invariant", r.invariant},
         {"value", r.value},
         {"exact", r.exact}};
  if (r.weight_set) j["weight_set"] = *r.weight_set;
  if (r.witness) j["witness"] = *r.witness;
  j["tool_version"] = r.tool_version;
  j["elapsed_ms"] = r.elapsed_ms;
  j["timestamp"] = r.timestamp;
  return j;
}

ResultRecord record_from_json(const json& j) {
  if (!j.is_object()) throw Error("cache record is not an object");
  if (j.at("v").get<int>() != kCacheSchemaVersion) throw Error("unknown cache schema version");
  ResultRecord r;
  r.descriptor = j.at("descriptor").get<std::string>();
  r.invariant = j.at("invariant").get<std::string>();
  r.value = j.at("value");
  if (!r.value.is_boolean() && !r.value.is_number_integer()) throw Error("cache value must be an integer or boolean");
  r.exact = j.at("exact").get<bool>();
  if (j.contains("weight_set")) r.weight_set = j.at("weight_set").get<std::vector<int>>();
  if (j.contains("witness")) r.witness = j.at("witness").get<std::vector<std::string>>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

ResultRecord make_record(std::string descriptor, std::string invariant, json value, bool exact,
                         std::int64_t elapsed_ms) {
  ResultRecord r;
  r.descriptor = std::move(descriptor);
  r.invariant = std::move(invariant);
  r.value = std::move(value);
  r.exact = exact;
  r.tool_version = kToolVersion;
  r.elapsed_ms = elapsed_ms;
  r.timestamp = iso_timestamp();
  return r;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path resolve_cache_path(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("DAVLAB_CACHE"); env && *env) return env;
  return "davlab-cache.jsonl";
}

std::optional<int> version_major(const std::string& version) {
  std::size_t i = 0;
  int major = 0;
  while (i < version.size() && version[i] >= '0' && version[i] <= '9') major = major * 10 + (version[i++] - '0');
  if (i == 0) return std::nullopt;
  return major;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records_.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      warnings_.push_back(path_.string() + ":" + std::to_string(lineno) + ": skipped corrupt record (" + e.what() +
                          ")");
    }
  }
}

std::optional<ResultRecord> ResultCache::get(const std::string& descriptor, const std::string& invariant,
                                             const std::optional<std::vector<int>>& weight_set) const {
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->descriptor != descriptor || it->invariant != invariant || it->weight_set != weight_set) continue;
    if (version_major(it->tool_version) != kToolVersionMajor) continue;
    return *it;
  }
  return std::nullopt;
}

void ResultCache::put(const ResultRecord& record) {
  const auto line = to_json(record).dump() + "\n";
  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot open cache " + path_.string() + ": " + std::strerror(errno));
  // O_APPEND makes each single write land as one contiguous line.
  const auto written = ::write(fd, line.data(), line.size());
  const int saved = errno;
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size()))
    throw IoError("cannot write cache " + path_.string() + ": " + std::strerror(saved));
  records_.push_back(record);
}

} // namespace davlab
