#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bfn::csv {

/// Shortest decimal string that round-trips to the same double ("nan" -> "").
std::string format(double value);

std::string join_row(const std::vector<double>& values);

/// Writes text atomically enough for our purposes; throws std::runtime_error
/// when the path cannot be opened.
void write_text(const std::filesystem::path& path, std::string_view text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  ///< empty cells read as NaN
};

Table read(const std::filesystem::path& path);

}  // namespace bfn::csv
