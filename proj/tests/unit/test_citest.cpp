#include <doctest.h>

#include <cmath>

#include "faircfs/citest/chi_square.hpp"
#include "faircfs/citest/g2.hpp"
#include "faircfs/data/dataset.hpp"
#include "faircfs/random.hpp"
#include "support/oracles.hpp"

using namespace faircfs;
using namespace faircfs::citest;
using data::Dataset;
using data::Role;

namespace {

Dataset columns(const std::vector<std::vector<int>>& cols, std::vector<int> arities = {}) {
  std::vector<data::Column> out;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const int a = arities.empty() ? 2 : arities[j];
    out.push_back({"c" + std::to_string(j), a, Role::feature, cols[j], {}});
  }
  return Dataset(std::move(out));
}

Dataset random_columns(std::size_t n, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(k), std::vector<int>(n));
  for (auto& c : cols)
    for (auto& v : c) v = static_cast<int>(uniform_index(rng, 2));
  return columns(cols);
}

}  // namespace

TEST_SUITE("citest") {

TEST_CASE("contingency counts") {
  const auto d = columns({{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}});
  const auto t = contingency(d, 0, 1, {});
  CHECK(t.n == 4);
  CHECK(t.n_z_configs == 1);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(t.at(x, y) == 1);

  const std::vector<int> z{2};
  const auto tz = contingency(d, 0, 1, z);
  REQUIRE(tz.n_z_configs == 2);
  CHECK(tz.at(0, 0, 0) == 1);
  CHECK(tz.at(0, 1, 0) == 1);
  CHECK(tz.at(1, 0, 0) == 0);
  CHECK(tz.at(1, 0, 1) == 1);
  CHECK(tz.at(1, 1, 1) == 1);
  CHECK(tz.at(0, 0, 1) == 0);

  CHECK_THROWS(contingency(d, 0, 0, {}));
  const std::vector<int> bad{0};
  CHECK_THROWS(contingency(d, 0, 1, bad));
  CHECK_THROWS(contingency(d, 0, 7, {}));
}

TEST_CASE("g2 closed forms") {
  auto r = g2_statistic(make_table({{{5, 5}, {5, 5}}}));
  CHECK(r.g2 == doctest::Approx(0.0));
  CHECK(r.dof == 1);

  r = g2_statistic(make_table({{{10, 0}, {0, 10}}}));
  CHECK(std::abs(r.g2 - 40.0 * std::log(2.0)) < 1e-9);
  CHECK(r.g2 == doctest::Approx(27.7259).epsilon(1e-5));
  CHECK(r.dof == 1);

  r = g2_statistic(make_table({{{10, 0}, {0, 10}}, {{10, 0}, {0, 10}}}));
  CHECK(r.g2 == doctest::Approx(55.4518).epsilon(1e-5));
  CHECK(r.dof == 2);
}

TEST_CASE("g2 degrees of freedom shrink with empty slices and marginals") {
  // Second slice is empty; third has a zero row marginal.
  auto r = g2_statistic(make_table({{{3, 1, 2}, {1, 4, 2}}, {{0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {2, 5, 1}}}));
  CHECK(r.dof == 2);
  r = g2_statistic(make_table({{{0, 0}, {0, 0}}}));
  CHECK(r.g2 == 0.0);
  CHECK(r.dof == 1);
}

TEST_CASE("g2 is symmetric and additive under row duplication") {
  const auto d = random_columns(500, 4, 3);
  const std::vector<int> z{2, 3};
  const auto a = g2_statistic(contingency(d, 0, 1, z));
  const auto b = g2_statistic(contingency(d, 1, 0, z));
  CHECK(a.g2 == doctest::Approx(b.g2).epsilon(1e-12));
  CHECK(a.dof == b.dof);

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < d.n_rows(); ++i) rows.push_back(i);
  for (std::size_t i = 0; i < d.n_rows(); ++i) rows.push_back(i);
  const auto doubled = d.select_rows(rows);
  const auto c = g2_statistic(contingency(doubled, 0, 1, z));
  CHECK(c.g2 == doctest::Approx(2.0 * a.g2).epsilon(1e-10));
  CHECK(c.dof == a.dof);
}

TEST_CASE("chi-square survival function") {
  CHECK(chi_square_sf(0.0, 1) == 1.0);
  CHECK(chi_square_sf(0.0, 7) == 1.0);
  CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi_square_sf(27.7259, 1) == doctest::Approx(1.4e-7).epsilon(0.05));
  // Closed form for two degrees of freedom checks relative accuracy in the tail.
  for (double x : {0.1, 1.0, 5.0, 20.0, 60.0, 120.0}) {
    const double exact = std::exp(-x / 2.0);
    CHECK(std::abs(chi_square_sf(x, 2) - exact) / exact < 1e-8);
  }
  for (int dof = 1; dof <= 10; ++dof) {
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
      const double x = 0.5 * i;
      const double p = chi_square_sf(x, dof);
      CHECK(std::abs(p - oracle::chi_square_sf(x, dof)) < 1e-6);
      CHECK(p <= prev);
      prev = p;
    }
  }
}

TEST_CASE("perfect dependence is detected") {
  const auto base = random_columns(1000, 1, 9);
  const auto x = std::vector<int>(base.codes(0).begin(), base.codes(0).end());
  const auto d = columns({x, x});
  const auto r = is_independent(d, 0, 1, {}, {});
  CHECK_FALSE(r.independent);
  CHECK(r.reliable);
  CHECK(r.p_value < 1e-12);
}

TEST_CASE("independent coins pass at about 1 - alpha") {
  int independent = 0;
  const int runs = 400;
  for (int seed = 0; seed < runs; ++seed) {
    const auto d = random_columns(10000, 2, 100 + static_cast<std::uint64_t>(seed));
    independent += is_independent(d, 0, 1, {}, {}).independent;
  }
  // Binomial(400, 0.01) exceeds 12 rejections with probability below 1e-3.
  CHECK(independent >= runs - 12);
}

TEST_CASE("sparse conditioning is unreliable") {
  const auto d = random_columns(50, 8, 5);
  const std::vector<int> z{2, 3, 4, 5, 6, 7};
  CHECK(structural_dof(d, 0, 1, z) == 64.0);
  CiConfig cfg;
  auto r = is_independent(d, 0, 1, z, cfg);
  CHECK_FALSE(r.reliable);
  CHECK(r.independent);
  cfg.unreliable_policy = UnreliablePolicy::dependent;
  r = is_independent(d, 0, 1, z, cfg);
  CHECK_FALSE(r.reliable);
  CHECK_FALSE(r.independent);
}

TEST_CASE("decision is monotone in g2 and matches p against alpha") {
  CiConfig cfg;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto d = random_columns(300, 3, seed);
    const std::vector<int> z{2};
    const auto r = is_independent(d, 0, 1, z, cfg);
    CHECK(r.g2 >= 0.0);
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    CHECK(r.independent == (r.p_value > cfg.alpha));
  }
  bool was_dependent = false;
  for (int i = 0; i <= 60; ++i) {
    const bool independent = chi_square_sf(0.5 * i, 3) > cfg.alpha;
    if (was_dependent) CHECK_FALSE(independent);
    was_dependent = was_dependent || !independent;
  }
  CHECK(was_dependent);
}

TEST_CASE("G2Test counts calls and policy names parse") {
  const auto d = random_columns(100, 3, 1);
  G2Test test(d, {});
  const std::vector<int> z{2};
  test(0, 1, z);
  test(0, 2, {});
  CHECK(test.tests_performed() == 2);
  CHECK(parse_unreliable_policy("dependent") == UnreliablePolicy::dependent);
  CHECK(to_string(UnreliablePolicy::independent) == "independent");
  CHECK_THROWS(parse_unreliable_policy("maybe"));
}

}  // TEST_SUITE
