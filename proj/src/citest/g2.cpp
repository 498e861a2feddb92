#include "faircfs/citest/g2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "faircfs/citest/chi_square.hpp"
#include "faircfs/error.hpp"

namespace faircfs::citest {
namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;

void check_indices(const data::Dataset& d, int x, int y, std::span<const int> z) {
  const auto valid = [&](int j) { return j >= 0 && j < d.n_cols(); };
  if (!valid(x) || !valid(y)) throw std::out_of_range("CI test: column index out of range");
  if (x == y) throw std::invalid_argument("CI test: x and y must differ");
  for (int j : z) {
    if (!valid(j)) throw std::out_of_range("CI test: conditioning index out of range");
    if (j == x || j == y) throw std::invalid_argument("CI test: conditioning set contains a tested variable");
  }
}

}  // namespace

ContingencyTable make_table(const std::vector<std::vector<std::vector<std::int64_t>>>& slices) {
  ContingencyTable t;
  if (slices.empty() || slices.front().empty()) throw std::invalid_argument("make_table: empty table");
  t.n_z_configs = slices.size();
  t.arity_x = static_cast<int>(slices.front().size());
  t.arity_y = static_cast<int>(slices.front().front().size());
  for (const auto& slice : slices) {
    if (slice.size() != static_cast<std::size_t>(t.arity_x)) throw std::invalid_argument("make_table: ragged table");
    for (const auto& row : slice) {
      if (row.size() != static_cast<std::size_t>(t.arity_y)) throw std::invalid_argument("make_table: ragged table");
      for (auto c : row) {
        if (c < 0) throw std::invalid_argument("make_table: negative count");
        t.counts.push_back(c);
        t.n += c;
      }
    }
  }
  return t;
}

ContingencyTable contingency(const data::Dataset& d, int x, int y, std::span<const int> z) {
  check_indices(d, x, y, z);
  const std::size_t n = d.n_rows();
  const auto xs = d.codes(x);
  const auto ys = d.codes(y);

  // Mixed-radix key of each row's z configuration.
  std::vector<std::uint64_t> keys(n, 0);
  bool overflow = false;
  std::uint64_t n_configs = 1;
  for (int j : z) {
    const auto arity = static_cast<std::uint64_t>(d.arity(j));
    if (n_configs > std::numeric_limits<std::uint64_t>::max() / arity) {
      overflow = true;
      break;
    }
    n_configs *= arity;
    const auto codes = d.codes(j);
    for (std::size_t r = 0; r < n; ++r) keys[r] = keys[r] * arity + static_cast<std::uint64_t>(codes[r]);
  }

  // Dense slice id per row, in ascending configuration order.
  std::vector<std::size_t> slice_of(n);
  std::size_t n_slices = 0;
  if (overflow) {
    std::map<std::vector<int>, std::size_t> ids;
    std::vector<int> config(z.size());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < z.size(); ++i) config[i] = d.codes(z[i])[r];
      ids.emplace(config, 0);
    }
    for (auto& [cfg, id] : ids) id = n_slices++;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < z.size(); ++i) config[i] = d.codes(z[i])[r];
      slice_of[r] = ids.at(config);
    }
  } else if (n_configs <= kDenseLimit) {
    std::vector<std::size_t> id(static_cast<std::size_t>(n_configs), 0);
    for (std::size_t r = 0; r < n; ++r) id[keys[r]] = 1;
    for (auto& v : id) v = v ? n_slices++ : 0;
    for (std::size_t r = 0; r < n; ++r) slice_of[r] = id[keys[r]];
  } else {
    std::map<std::uint64_t, std::size_t> ids;
    for (auto k : keys) ids.emplace(k, 0);
    for (auto& [k, id] : ids) id = n_slices++;
    for (std::size_t r = 0; r < n; ++r) slice_of[r] = ids.at(keys[r]);
  }

  ContingencyTable t;
  t.arity_x = d.arity(x);
  t.arity_y = d.arity(y);
  t.n_z_configs = std::max<std::size_t>(n_slices, 1);
  t.counts.assign(t.n_z_configs * static_cast<std::size_t>(t.arity_x * t.arity_y), 0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t cell = (slice_of[r] * static_cast<std::size_t>(t.arity_x) + static_cast<std::size_t>(xs[r])) *
                                 static_cast<std::size_t>(t.arity_y) +
                             static_cast<std::size_t>(ys[r]);
    ++t.counts[cell];
  }
  t.n = static_cast<std::int64_t>(n);
  return t;
}

G2 g2_statistic(const ContingencyTable& t) {
  const auto ax = static_cast<std::size_t>(t.arity_x);
  const auto ay = static_cast<std::size_t>(t.arity_y);
  std::vector<std::int64_t> row(ax), col(ay);
  double g2 = 0.0;
  long long dof = 0;
  for (std::size_t z = 0; z < t.n_z_configs; ++z) {
    const std::int64_t* slice = t.counts.data() + z * ax * ay;
    std::fill(row.begin(), row.end(), 0);
    std::fill(col.begin(), col.end(), 0);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < ax; ++i) {
      for (std::size_t j = 0; j < ay; ++j) {
        row[i] += slice[i * ay + j];
        col[j] += slice[i * ay + j];
        total += slice[i * ay + j];
      }
    }
    if (total == 0) continue;
    const auto nonzero = [](const std::vector<std::int64_t>& v) {
      return static_cast<long long>(std::count_if(v.begin(), v.end(), [](auto c) { return c > 0; }));
    };
    dof += (nonzero(row) - 1) * (nonzero(col) - 1);
    for (std::size_t i = 0; i < ax; ++i) {
      for (std::size_t j = 0; j < ay; ++j) {
        const auto observed = static_cast<double>(slice[i * ay + j]);
        if (observed == 0.0) continue;
        const double expected = static_cast<double>(row[i]) * static_cast<double>(col[j]) / static_cast<double>(total);
        g2 += observed * std::log(observed / expected);
      }
    }
  }
  return {std::max(0.0, 2.0 * g2), static_cast<int>(std::max<long long>(dof, 1))};
}

std::string to_string(UnreliablePolicy p) {
  return p == UnreliablePolicy::independent ? "independent" : "dependent";
}

UnreliablePolicy parse_unreliable_policy(const std::string& s) {
  if (s == "independent") return UnreliablePolicy::independent;
  if (s == "dependent") return UnreliablePolicy::dependent;
  throw ConfigError("unknown unreliable policy '" + s + "'");
}

double structural_dof(const data::Dataset& d, int x, int y, std::span<const int> z) {
  double dof = static_cast<double>(d.arity(x) - 1) * static_cast<double>(d.arity(y) - 1);
  for (int j : z) dof *= d.arity(j);
  return dof;
}

CiResult is_independent(const data::Dataset& d, int x, int y, std::span<const int> z, const CiConfig& cfg) {
  const auto table = contingency(d, x, y, z);
  const auto stat = g2_statistic(table);
  CiResult r;
  r.g2 = stat.g2;
  r.dof = stat.dof;
  r.p_value = chi_square_sf(stat.g2, stat.dof);
  r.alpha = cfg.alpha;
  r.reliable = static_cast<double>(table.n) >= cfg.reliability_factor * structural_dof(d, x, y, z);
  r.independent = r.reliable ? r.p_value > cfg.alpha : cfg.unreliable_policy == UnreliablePolicy::independent;
  return r;
}

}  // namespace faircfs::citest
