#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ivlingam/dataset.hpp"

namespace ivlingam {

/// Column name -> role. Only listed columns are read; everything else in the
/// file is ignored.
using RoleMap = std::vector<std::pair<std::string, Role>>;

/// Splits RFC-4180 text into records. Quoted fields may hold commas, doubled
/// quotes and line breaks; CRLF and LF line endings are both accepted.
[[nodiscard]] std::vector<std::vector<std::string>> parse_csv_records(std::istream& in);

/// Strict ingestion: a row with an empty or non-numeric cell in any mapped
/// column rejects the whole file (NonNumericCellError reports the first cell
/// and the number of bad rows). Columns keep their header order.
[[nodiscard]] Dataset read_csv(std::istream& in, const RoleMap& roles);
[[nodiscard]] Dataset load_csv(const std::filesystem::path& path, const RoleMap& roles);

/// Header plus one row per observation; values use the shortest
/// representation that parses back to the same double.
void write_csv(std::ostream& out, const Dataset& data);
void save_csv(const std::filesystem::path& path, const Dataset& data);

[[nodiscard]] std::string format_double(double value);

}  // namespace ivlingam
