#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "faircfs/data/dataset.hpp"

namespace faircfs::citest {

// Observed counts of (x, y) within each configuration of the conditioning
// set. Only configurations that occur in the data are materialized; an
// empty conditioning set gives a single slice.
struct ContingencyTable {
  int arity_x = 0;
  int arity_y = 0;
  std::size_t n_z_configs = 1;
  std::vector<std::int64_t> counts;  // [z][x][y], row-major
  std::int64_t n = 0;

  std::int64_t at(int x, int y, std::size_t z = 0) const {
    return counts[(z * static_cast<std::size_t>(arity_x) + static_cast<std::size_t>(x)) *
                      static_cast<std::size_t>(arity_y) +
                  static_cast<std::size_t>(y)];
  }
};

// Builds a table from explicit slices: slices[z][x][y].
ContingencyTable make_table(const std::vector<std::vector<std::vector<std::int64_t>>>& slices);

ContingencyTable contingency(const data::Dataset& d, int x, int y, std::span<const int> z);

struct G2 {
  double g2 = 0.0;
  int dof = 1;
};

// Likelihood-ratio statistic 2 * sum O ln(O / E) with E from the per-slice
// marginals. Each non-empty slice contributes (rx - 1)(ry - 1) degrees of
// freedom, rx and ry counting its non-zero marginals; the total is at least 1.
G2 g2_statistic(const ContingencyTable& t);

enum class UnreliablePolicy { independent, dependent };

std::string to_string(UnreliablePolicy p);
UnreliablePolicy parse_unreliable_policy(const std::string& s);

struct CiConfig {
  double alpha = 0.01;
  // A test is reliable when n >= reliability_factor * (ax-1)(ay-1) * prod(arity z).
  double reliability_factor = 10.0;
  UnreliablePolicy unreliable_policy = UnreliablePolicy::independent;
};

struct CiResult {
  double g2 = 0.0;
  int dof = 1;
  double p_value = 1.0;
  bool independent = true;
  bool reliable = true;
  double alpha = 0.01;
};

// Degrees of freedom of the full table implied by declared arities; the
// sample-size heuristic compares n against this.
double structural_dof(const data::Dataset& d, int x, int y, std::span<const int> z);

CiResult is_independent(const data::Dataset& d, int x, int y, std::span<const int> z, const CiConfig& cfg);

// Binds a dataset and config and counts the tests it runs. Not thread-safe;
// give each worker its own instance.
class G2Test {
 public:
  G2Test(const data::Dataset& d, CiConfig cfg) : data_(&d), cfg_(cfg) {}

  CiResult operator()(int x, int y, std::span<const int> z) {
    ++tests_;
    return is_independent(*data_, x, y, z, cfg_);
  }

  const data::Dataset& dataset() const { return *data_; }
  const CiConfig& config() const { return cfg_; }
  std::size_t tests_performed() const { return tests_; }

 private:
  const data::Dataset* data_;
  CiConfig cfg_;
  std::size_t tests_ = 0;
};

}  // namespace faircfs::citest
