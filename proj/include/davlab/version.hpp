#pragma once

namespace davlab {

inline constexpr const char* kToolVersion = "1.0.0";
/// Cache records from another major version are ignored.
inline constexpr int kToolVersionMajor = 1;
inline constexpr int kCacheSchemaVersion = 1;

} // namespace davlab
