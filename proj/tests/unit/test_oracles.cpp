#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"

using faircfs::graph::Dag;

TEST_SUITE("oracles") {

TEST_CASE("quadrature tail against closed forms") {
  for (double x : {0.5, 2.0, 9.0, 30.0}) {
    CHECK(oracle::chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-9));
    CHECK(oracle::chi_square_sf(x, 1) == doctest::Approx(std::erfc(std::sqrt(x / 2))).epsilon(1e-8));
  }
  CHECK(oracle::chi_square_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(oracle::chi_square_sf(18.307038, 10) == doctest::Approx(0.05).epsilon(1e-5));
}

TEST_CASE("path enumeration on textbook graphs") {
  const auto chain = Dag::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(oracle::d_separated(chain, 0, 2, {1}));
  CHECK_FALSE(oracle::d_separated(chain, 0, 2, {}));
  const auto collider = Dag::from_edges(4, {{0, 1}, {2, 1}, {1, 3}});
  CHECK(oracle::d_separated(collider, 0, 2, {}));
  CHECK_FALSE(oracle::d_separated(collider, 0, 2, {1}));
  CHECK_FALSE(oracle::d_separated(collider, 0, 2, {3}));
  // Two routes; blocking one leaves the other open.
  const auto diamond = Dag::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK_FALSE(oracle::d_separated(diamond, 0, 3, {1}));
  CHECK(oracle::d_separated(diamond, 0, 3, {1, 2}));
}

TEST_CASE("blanket and F1 helpers") {
  const auto g = Dag::from_edges(4, {{0, 1}, {2, 1}, {1, 3}});
  CHECK(oracle::markov_blanket(g, 0) == std::vector<int>{1, 2});
  CHECK(oracle::markov_blanket(g, 1) == std::vector<int>{0, 2, 3});
  CHECK(oracle::structural_f1({}, {}) == 1.0);
  CHECK(oracle::structural_f1({1}, {2}) == 0.0);
  CHECK(oracle::structural_f1({1, 2}, {2, 3}) == doctest::Approx(0.5));
  CHECK(oracle::separable_by_subset(g, 0, 2, {1, 3}));
  CHECK_FALSE(oracle::separable_by_subset(g, 0, 1, {2, 3}));
}

}  // TEST_SUITE
