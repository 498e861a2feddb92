#include "faircfs/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "faircfs/data/discretize.hpp"
#include "faircfs/error.hpp"

namespace faircfs::data {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw DataError("schema key '" + key + "' expects an integer, got '" + value + "'");
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote_if_needed(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Schema Schema::parse(const std::string& text) {
  Schema schema;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("schema line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "sensitive") {
      schema.sensitive = value;
    } else if (key == "label") {
      schema.label = value;
    } else if (key == "positive") {
      schema.positive_label = value;
    } else if (key == "bins") {
      schema.default_bins = parse_int(key, value);
    } else if (key.starts_with("type.")) {
      auto& spec = schema.columns[key.substr(5)];
      if (value == "numeric") {
        spec.type = ColumnType::numeric;
      } else if (value == "categorical") {
        spec.type = ColumnType::categorical;
      } else {
        throw DataError("schema key '" + key + "': unknown column type '" + value + "'");
      }
    } else if (key.starts_with("bins.")) {
      schema.columns[key.substr(5)].n_bins = parse_int(key, value);
    } else if (key.starts_with("levels.")) {
      schema.columns[key.substr(7)].levels = split_list(value);
    } else {
      throw DataError("schema line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (schema.sensitive.empty()) throw DataError("schema does not name a sensitive column");
  if (schema.label.empty()) throw DataError("schema does not name a label column");
  if (schema.sensitive == schema.label) throw DataError("sensitive and label columns must differ");
  return schema;
}

Schema Schema::read(const std::filesystem::path& path) { return parse(read_file(path)); }

std::string Schema::to_string() const {
  std::ostringstream out;
  out << "sensitive = " << sensitive << "\n";
  out << "label = " << label << "\n";
  if (positive_label) out << "positive = " << *positive_label << "\n";
  out << "bins = " << default_bins << "\n";
  for (const auto& [name, spec] : columns) {
    if (spec.type == ColumnType::numeric) out << "type." << name << " = numeric\n";
    if (spec.n_bins) out << "bins." << name << " = " << *spec.n_bins << "\n";
    if (!spec.levels.empty()) {
      out << "levels." << name << " = ";
      for (std::size_t i = 0; i < spec.levels.size(); ++i) out << (i ? ", " : "") << spec.levels[i];
      out << "\n";
    }
  }
  return out.str();
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "?" || cell == "NA" || cell == "NaN" || cell == "nan";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(trim(field));
  return fields;
}

LoadResult parse_csv(const std::string& text, const Schema& schema) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) throw DataError("CSV has no header row");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  const auto header = split_csv_line(line);

  const auto column_of = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("unknown column in schema: '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t s_col = column_of(schema.sensitive);
  const std::size_t y_col = column_of(schema.label);
  for (const auto& [name, spec] : schema.columns) column_of(name);

  std::vector<std::vector<std::string>> cells(header.size());
  std::size_t dropped = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw DataError("row length mismatch at line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    if (std::any_of(fields.begin(), fields.end(), is_missing)) {
      ++dropped;
      continue;
    }
    for (std::size_t j = 0; j < fields.size(); ++j) cells[j].push_back(std::move(fields[j]));
  }
  if (cells.empty() || cells.front().empty()) throw DataError("empty dataset");

  std::vector<Column> columns;
  columns.reserve(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    Column col;
    col.name = header[j];
    col.role = j == s_col ? Role::sensitive : j == y_col ? Role::label : Role::feature;
    const auto spec_it = schema.columns.find(col.name);
    const ColumnSpec spec = spec_it == schema.columns.end() ? ColumnSpec{} : spec_it->second;
    const auto& values = cells[j];

    if (j == y_col && schema.positive_label) {
      col.levels = {"other", *schema.positive_label};
      col.arity = 2;
      for (const auto& v : values) col.codes.push_back(v == *schema.positive_label ? 1 : 0);
    } else if (spec.type == ColumnType::numeric) {
      std::vector<double> numbers;
      numbers.reserve(values.size());
      for (const auto& v : values) {
        double x = 0.0;
        const auto* end = v.data() + v.size();
        auto [ptr, ec] = std::from_chars(v.data(), end, x);
        if (ec != std::errc() || ptr != end) throw DataError("column '" + col.name + "': '" + v + "' is not numeric");
        numbers.push_back(x);
      }
      col.codes = discretize(numbers, spec.n_bins.value_or(schema.default_bins));
      col.arity = *std::max_element(col.codes.begin(), col.codes.end()) + 1;
    } else {
      std::unordered_map<std::string, int> code_of;
      for (std::size_t i = 0; i < spec.levels.size(); ++i) code_of.emplace(spec.levels[i], static_cast<int>(i));
      col.levels = spec.levels;
      for (const auto& v : values) {
        auto it = code_of.find(v);
        if (it == code_of.end()) {
          if (!spec.levels.empty()) throw DataError("column '" + col.name + "': value '" + v + "' not among declared levels");
          it = code_of.emplace(v, static_cast<int>(col.levels.size())).first;
          col.levels.push_back(v);
        }
        col.codes.push_back(it->second);
      }
      col.arity = static_cast<int>(col.levels.size());
    }
    columns.push_back(std::move(col));
  }
  return {Dataset(std::move(columns)), dropped};
}

LoadResult load_csv(const std::filesystem::path& path, const Schema& schema) {
  return parse_csv(read_file(path), schema);
}

std::string to_csv(const Dataset& d) {
  std::string out;
  for (int j = 0; j < d.n_cols(); ++j) {
    if (j) out += ',';
    out += quote_if_needed(d.name(j));
  }
  out += '\n';
  for (std::size_t r = 0; r < d.n_rows(); ++r) {
    for (int j = 0; j < d.n_cols(); ++j) {
      if (j) out += ',';
      out += quote_if_needed(d.decode(j, d.codes(j)[r]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace faircfs::data
