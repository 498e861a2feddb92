#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace faircfs::data {

enum class Role { feature, sensitive, label };

// Sorted, duplicate-free set of column (or node) indices.
using VarSet = std::vector<int>;

struct Column {
  std::string name;
  int arity = 0;
  Role role = Role::feature;
  std::vector<int> codes;
  // Original category strings by code. Empty when codes have no labels
  // (e.g. sampled or discretized columns).
  std::vector<std::string> levels;
};

// Column-oriented table of categorical codes. Immutable once built; every
// code in column j lies in [0, arity_j) and all columns share one length.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Column> columns);

  std::size_t n_rows() const { return n_rows_; }
  int n_cols() const { return static_cast<int>(columns_.size()); }

  const Column& column(int j) const { return columns_.at(static_cast<std::size_t>(j)); }
  std::span<const int> codes(int j) const { return column(j).codes; }
  int arity(int j) const { return column(j).arity; }
  const std::string& name(int j) const { return column(j).name; }
  Role role(int j) const { return column(j).role; }

  // Index of the named column, or nullopt.
  std::optional<int> find(const std::string& name) const;
  // Like find, but throws DataError for an unknown name.
  int index_of(const std::string& name) const;

  // The sensitive and label columns. Throw DataError unless exactly one
  // column carries the role.
  int sensitive() const;
  int label() const;
  bool has_roles() const;

  // Copy with the given columns tagged sensitive and label, all others feature.
  Dataset with_roles(int sensitive, int label) const;

  // Row subset in the given order.
  Dataset select_rows(std::span<const std::size_t> rows) const;

  // Category string for a code, falling back to the decimal code.
  std::string decode(int j, int code) const;

 private:
  int unique_role(Role r) const;

  std::vector<Column> columns_;
  std::size_t n_rows_ = 0;
};

// Removes duplicates and sorts.
VarSet make_set(std::vector<int> values);
bool contains(const VarSet& set, int value);
VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_intersection(const VarSet& a, const VarSet& b);
VarSet set_difference(const VarSet& a, const VarSet& b);

}  // namespace faircfs::data
