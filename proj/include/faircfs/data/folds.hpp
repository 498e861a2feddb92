#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "faircfs/data/dataset.hpp"

namespace faircfs::data {

struct FoldAssignment {
  std::vector<int> fold_of_row;
  int k = 0;
  std::uint64_t seed = 0;

  std::vector<std::size_t> train_rows(int fold) const;
  std::vector<std::size_t> test_rows(int fold) const;
};

// Label-stratified k-fold assignment. Rows of each label are shuffled and
// dealt round-robin, continuing the deal across labels, so every fold holds
// within one row of its share of each label. Requires 2 <= k <= n_rows.
FoldAssignment stratified_folds(const Dataset& d, int k, std::uint64_t seed);

}  // namespace faircfs::data
