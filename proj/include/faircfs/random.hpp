#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace faircfs {

// The standard distributions are implementation-defined; these helpers keep
// sampled data and fold assignments identical across standard libraries.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

// Standard exponential draw; used to build Dirichlet samples.
inline double exponential(Rng& rng) {
  double u = uniform01(rng);
  while (u <= 0.0) u = uniform01(rng);
  return -std::log(u);
}

}  // namespace faircfs
