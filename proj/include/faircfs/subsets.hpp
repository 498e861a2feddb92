#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace faircfs {

// Visits subsets of `elements` by increasing size, lexicographically within a
// size (relative to the order of `elements`), up to `max_size` members.
// Stops early and returns true as soon as `visit` returns true.
template <typename T, typename Visit>
bool for_each_subset(const std::vector<T>& elements, std::size_t max_size, Visit&& visit) {
  const std::size_t n = elements.size();
  max_size = std::min(max_size, n);
  std::vector<T> subset;
  std::vector<std::size_t> idx;
  for (std::size_t size = 0; size <= max_size; ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      subset.clear();
      for (std::size_t i : idx) subset.push_back(elements[i]);
      if (visit(static_cast<const std::vector<T>&>(subset))) return true;
      // Advance to the next combination.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return false;
}

}  // namespace faircfs
