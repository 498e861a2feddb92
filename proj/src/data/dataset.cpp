#include "faircfs/data/dataset.hpp"

#include <algorithm>
#include <iterator>

#include "faircfs/error.hpp"

namespace faircfs::data {

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
  n_rows_ = columns_.empty() ? 0 : columns_.front().codes.size();
  for (const auto& c : columns_) {
    if (c.codes.size() != n_rows_) {
      throw DataError("column '" + c.name + "' has " + std::to_string(c.codes.size()) +
                      " rows, expected " + std::to_string(n_rows_));
    }
    if (c.arity < 1) throw DataError("column '" + c.name + "' has non-positive arity");
    for (int code : c.codes) {
      if (code < 0 || code >= c.arity) {
        throw DataError("column '" + c.name + "' has code " + std::to_string(code) +
                        " outside arity " + std::to_string(c.arity));
      }
    }
  }
}

std::optional<int> Dataset::find(const std::string& name) const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].name == name) return static_cast<int>(j);
  }
  return std::nullopt;
}

int Dataset::index_of(const std::string& name) const {
  if (auto j = find(name)) return *j;
  throw DataError("unknown column '" + name + "'");
}

int Dataset::unique_role(Role r) const {
  int found = -1;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].role != r) continue;
    if (found >= 0) throw DataError("more than one column carries the same role");
    found = static_cast<int>(j);
  }
  if (found < 0) {
    throw DataError(r == Role::sensitive ? "no sensitive column" : "no label column");
  }
  return found;
}

int Dataset::sensitive() const { return unique_role(Role::sensitive); }
int Dataset::label() const { return unique_role(Role::label); }

bool Dataset::has_roles() const {
  const auto count = [&](Role r) {
    return std::count_if(columns_.begin(), columns_.end(), [r](const Column& c) { return c.role == r; });
  };
  return count(Role::sensitive) == 1 && count(Role::label) == 1;
}

Dataset Dataset::with_roles(int sensitive, int label) const {
  if (sensitive == label) throw DataError("sensitive and label must be distinct columns");
  auto cols = columns_;
  for (auto& c : cols) c.role = Role::feature;
  cols.at(static_cast<std::size_t>(sensitive)).role = Role::sensitive;
  cols.at(static_cast<std::size_t>(label)).role = Role::label;
  Dataset out;
  out.columns_ = std::move(cols);
  out.n_rows_ = n_rows_;
  return out;
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Dataset out;
  out.columns_.reserve(columns_.size());
  for (const auto& c : columns_) {
    Column sub{c.name, c.arity, c.role, {}, c.levels};
    sub.codes.reserve(rows.size());
    for (std::size_t r : rows) sub.codes.push_back(c.codes.at(r));
    out.columns_.push_back(std::move(sub));
  }
  out.n_rows_ = rows.size();
  return out;
}

std::string Dataset::decode(int j, int code) const {
  const auto& levels = column(j).levels;
  if (code >= 0 && static_cast<std::size_t>(code) < levels.size()) return levels[static_cast<std::size_t>(code)];
  return std::to_string(code);
}

VarSet make_set(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

bool contains(const VarSet& set, int value) {
  return std::binary_search(set.begin(), set.end(), value);
}

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet set_intersection(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet set_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace faircfs::data
