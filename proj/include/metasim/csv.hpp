#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "metasim/engine.hpp"

namespace metasim {

// 9-significant-digit decimal formatting, locale-independent.
std::string format_g9(double v);

// Fixed header + one row per record, '\n' line endings, bit-exact across
// platforms for identical inputs.
extern const char* const kTimeSeriesHeader;
std::string records_to_csv(const std::vector<TimeSeriesRecord>& records);

// Summary CSV: header metric,value.
std::string summary_to_csv(
    const std::vector<std::pair<std::string, double>>& summary);

// FNV-1a 64-bit content digest, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// One emitted file with its content digest.
struct ManifestEntry {
  std::string name;
  std::string digest;
};
std::string manifest_to_text(const std::vector<ManifestEntry>& entries);

}  // namespace metasim
