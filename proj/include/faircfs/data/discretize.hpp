#pragma once

#include <span>
#include <vector>

namespace faircfs::data {

// Equal-frequency binning into at most `n_bins` bins. Cut points sit at the
// sample quantiles; coinciding quantiles merge bins, so codes always form a
// contiguous range starting at 0 and are monotone in the input value.
// Throws std::invalid_argument when n_bins < 2 or values is empty.
std::vector<int> discretize(std::span<const double> values, int n_bins);

}  // namespace faircfs::data
