#include "faircfs/data/discretize.hpp"

#include <algorithm>
#include <stdexcept>

namespace faircfs::data {

std::vector<int> discretize(std::span<const double> values, int n_bins) {
  if (n_bins < 2) throw std::invalid_argument("discretize: n_bins must be at least 2");
  if (values.empty()) throw std::invalid_argument("discretize: empty input");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  // Cut b sits at the order statistic floor(b * n / n_bins). A cut equal to
  // the minimum would leave bin 0 empty, so those are dropped.
  std::vector<double> cuts;
  for (int b = 1; b < n_bins; ++b) {
    const double cut = sorted[static_cast<std::size_t>(b) * n / static_cast<std::size_t>(n_bins)];
    if (cut > sorted.front() && (cuts.empty() || cut > cuts.back())) cuts.push_back(cut);
  }

  std::vector<int> codes;
  codes.reserve(n);
  for (double v : values) {
    codes.push_back(static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin()));
  }
  return codes;
}

}  // namespace faircfs::data
