#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faircfs/data/dataset.hpp"

namespace faircfs::data {

enum class ColumnType { categorical, numeric };

struct ColumnSpec {
  ColumnType type = ColumnType::categorical;
  std::optional<int> n_bins;
  // Fixed code order; codes otherwise follow first appearance in the file.
  std::vector<std::string> levels;
};

// Column roles and types for CSV ingestion. Text form, one `key = value` per
// line, `#` starts a comment:
//
//   sensitive = sex
//   label = income
//   positive = >50K        # label binarized: 1 iff value equals this
//   bins = 5               # default for numeric columns
//   type.age = numeric
//   bins.age = 4
//   levels.sex = female, male
struct Schema {
  std::string sensitive;
  std::string label;
  std::optional<std::string> positive_label;
  int default_bins = 5;
  std::map<std::string, ColumnSpec> columns;

  static Schema parse(const std::string& text);
  static Schema read(const std::filesystem::path& path);
  std::string to_string() const;
};

struct LoadResult {
  Dataset dataset;
  std::size_t dropped_rows = 0;  // rows with a missing cell
};

// Cells that count as missing.
bool is_missing(const std::string& cell);

// Splits one CSV record; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line);

LoadResult parse_csv(const std::string& text, const Schema& schema);
LoadResult load_csv(const std::filesystem::path& path, const Schema& schema);

// Writes codes (decoded through levels when present) with a header row.
std::string to_csv(const Dataset& d);

}  // namespace faircfs::data
