#include "faircfs/data/folds.hpp"

#include <string>

#include "faircfs/error.hpp"
#include "faircfs/random.hpp"

namespace faircfs::data {

std::vector<std::size_t> FoldAssignment::train_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < fold_of_row.size(); ++r) {
    if (fold_of_row[r] != fold) rows.push_back(r);
  }
  return rows;
}

std::vector<std::size_t> FoldAssignment::test_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < fold_of_row.size(); ++r) {
    if (fold_of_row[r] == fold) rows.push_back(r);
  }
  return rows;
}

FoldAssignment stratified_folds(const Dataset& d, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > d.n_rows()) {
    throw ConfigError("fold count " + std::to_string(k) + " outside [2, " + std::to_string(d.n_rows()) + "]");
  }
  const int y = d.label();
  const auto labels = d.codes(y);

  std::vector<std::vector<std::size_t>> by_label(static_cast<std::size_t>(d.arity(y)));
  for (std::size_t r = 0; r < labels.size(); ++r) by_label[static_cast<std::size_t>(labels[r])].push_back(r);

  Rng rng(seed);
  FoldAssignment out{std::vector<int>(d.n_rows(), 0), k, seed};
  std::size_t position = 0;
  for (auto& rows : by_label) {
    shuffle(std::span<std::size_t>(rows), rng);
    for (std::size_t r : rows) out.fold_of_row[r] = static_cast<int>(position++ % static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace faircfs::data
