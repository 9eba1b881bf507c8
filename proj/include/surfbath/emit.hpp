#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace surfbath {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// CSV with a header line; "\n" line endings, no trailing separator.
std::string to_csv(const Table& t);
// JSON array of objects keyed by column name.
std::string to_json(const Table& t);

// FNV-1a 64-bit checksum, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

void write_file(const std::string& path, const std::string& content);

}  // namespace surfbath
