#pragma once

#include <string>

namespace dynpair {

inline constexpr const char* kSchemaVersion = "1";

// Fixed 12-decimal rendering keeps reports byte-identical across runs and
// platforms; nlohmann's shortest-round-trip doubles would not.
std::string format_real(double value);

// FNV-1a 64 of the raw bytes, hex.
std::string content_digest(const std::string& bytes);

std::string read_file(const std::string& path);  // throws Error on failure

}  // namespace dynpair
