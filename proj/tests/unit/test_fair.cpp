#include <doctest.h>

#include "faircfs/error.hpp"
#include "faircfs/fair/report.hpp"
#include "faircfs/fair/selector.hpp"
#include "faircfs/graph/bayes_net.hpp"
#include "faircfs/graph/dag.hpp"
#include "faircfs/graph/oracle.hpp"
#include "faircfs/graph/testbed.hpp"
#include "faircfs/random.hpp"

using namespace faircfs;
using namespace faircfs::fair;
using graph::TestbedRole;

namespace {

const graph::Testbed& testbed() {
  static const auto tb = graph::builtin_testbed();
  return tb;
}

const data::Dataset& testbed_data() {
  static const auto d = graph::sample(testbed().bn, 20000, 1);
  return d;
}

VarSet nodes_with(TestbedRole role) {
  VarSet out;
  for (const auto& [v, r] : testbed().roles)
    if (r == role) out.push_back(v);
  return out;
}

void check_invariants(const FairSelection& sel, const data::Dataset& d) {
  const int s = d.sensitive();
  const int y = d.label();
  CHECK(std::includes(sel.mb_y.begin(), sel.mb_y.end(), sel.m1.begin(), sel.m1.end()));
  CHECK(data::set_intersection(sel.m1, sel.mb_s).empty());
  for (int x : sel.m2) {
    CHECK(data::contains(sel.mb_y, x));
    CHECK(data::contains(sel.mb_s, x));
  }
  CHECK(data::set_intersection(sel.m1, sel.m2).empty());
  const auto chosen = sel.selected();
  CHECK_FALSE(data::contains(chosen, s));
  CHECK_FALSE(data::contains(chosen, y));

  VarSet accounted = chosen;
  for (const auto& [x, reason] : sel.rejected) {
    CHECK_FALSE(data::contains(accounted, x));
    accounted.push_back(x);
  }
  CHECK(data::make_set(accounted) == data::set_difference(sel.mb_y, {s}));

  citest::CiConfig ci;
  for (int x : chosen) {
    const auto& z = sel.witnesses.at(x);
    if (data::contains(sel.m1, x)) CHECK(z == sel.mb_s);
    CHECK_FALSE(data::contains(z, x));
    const auto r = citest::is_independent(d, x, s, z, ci);
    CHECK(r.independent);
    CHECK(r.reliable);
  }
}

}  // namespace

TEST_SUITE("fair") {

TEST_CASE("step 2 keeps nodes blocked by MB(S)") {
  const auto& d = testbed_data();
  const auto mb_s = graph::true_mb(testbed().bn.dag, testbed().sensitive);
  const auto candidates = nodes_with(TestbedRole::blocked_by_mbs);
  const auto r = step2_screen(d, candidates, mb_s, testbed().sensitive, {});
  CHECK(r.passed == candidates);
  for (int x : r.passed) CHECK(r.witnesses.at(x) == mb_s);
  CHECK(r.failures.empty());
  CHECK(r.tests_performed == candidates.size());
}

TEST_CASE("step 2 rejects a copy of S and handles empty input") {
  const auto& base = testbed_data();
  std::vector<data::Column> cols;
  for (int j = 0; j < base.n_cols(); ++j) cols.push_back(base.column(j));
  auto copy = base.column(base.sensitive());
  copy.name = "S_copy";
  copy.role = data::Role::feature;
  cols.push_back(copy);
  const data::Dataset d(std::move(cols));
  const int c = d.n_cols() - 1;
  const VarSet mb_s{testbed().label};
  const auto r = step2_screen(d, {c}, mb_s, d.sensitive(), {});
  CHECK(r.passed.empty());
  CHECK(r.failures.at(c) == RejectionReason::dependent_given_mbs);

  const auto none = step2_screen(d, {}, mb_s, d.sensitive(), {});
  CHECK(none.passed.empty());
  CHECK(none.failures.empty());

  CHECK_THROWS(step2_screen(d, {testbed().label}, mb_s, d.sensitive(), {}));
  CHECK_THROWS(step2_screen(d, {d.sensitive()}, mb_s, d.sensitive(), {}));
}

TEST_CASE("step 3 finds the subset witness and rejects S5") {
  const auto& tb = testbed();
  const auto& d = testbed_data();
  const auto mb_s = graph::true_mb(tb.bn.dag, tb.sensitive);
  const auto oracle = graph::oracle_fair_set(tb.bn.dag, tb.label, tb.sensitive);
  const auto candidates = data::set_intersection(mb_s, graph::true_mb(tb.bn.dag, tb.label));
  const auto r = step3_screen(d, candidates, mb_s, tb.sensitive, {});

  const auto subset_nodes = nodes_with(TestbedRole::blocked_by_subset);
  CHECK(r.passed == subset_nodes);
  for (int x : subset_nodes) CHECK(r.witnesses.at(x) == oracle.witness.at(x));
  REQUIRE(r.failures.count(tb.s5) == 1);
  CHECK(r.failures.at(tb.s5) == RejectionReason::no_witness_subset);
  for (int x : nodes_with(TestbedRole::unblockable))
    if (data::contains(candidates, x)) CHECK(r.failures.count(x) == 1);

  CHECK_THROWS(step3_screen(d, {nodes_with(TestbedRole::blocked_by_mbs).front()}, mb_s, tb.sensitive, {}));
}

TEST_CASE("step 3 with a singleton MB(S) tries only the empty set") {
  const auto& tb = testbed();
  const auto& d = testbed_data();
  const int x4 = nodes_with(TestbedRole::blocked_by_subset).front();
  const auto r = step3_screen(d, {x4}, {x4}, tb.sensitive, {});
  CHECK(r.tests_performed == 1);
  CHECK(r.passed == VarSet{x4});
  CHECK(r.witnesses.at(x4).empty());
}

TEST_CASE("step 3 respects max_z") {
  const auto& tb = testbed();
  const auto& d = testbed_data();
  const auto mb_s = graph::true_mb(tb.bn.dag, tb.sensitive);
  FairCfsConfig cfg;
  cfg.max_z = 0;
  const auto r = step3_screen(d, {tb.s5}, mb_s, tb.sensitive, cfg);
  CHECK(r.tests_performed == 1);
  CHECK(r.failures.at(tb.s5) == RejectionReason::no_witness_subset);
}

TEST_CASE("unreliable screening counts as dependence") {
  const auto& tb = testbed();
  const auto small = graph::sample(tb.bn, 60, 4);
  const auto mb_s = graph::true_mb(tb.bn.dag, tb.sensitive);
  const auto candidates = nodes_with(TestbedRole::blocked_by_mbs);
  const auto r = step2_screen(small, candidates, mb_s, tb.sensitive, {});
  CHECK(r.passed.empty());
  for (int x : candidates) CHECK(r.failures.at(x) == RejectionReason::unreliable_test);
}

TEST_CASE("testbed selection matches the oracle with consistent bookkeeping") {
  const auto& tb = testbed();
  const auto& d = testbed_data();
  const auto sel = select_fair_features(d, {});
  CHECK(sel.mb_y == graph::true_mb(tb.bn.dag, tb.label));
  CHECK(sel.mb_s == graph::true_mb(tb.bn.dag, tb.sensitive));
  CHECK(sel.m1 == nodes_with(TestbedRole::blocked_by_mbs));
  CHECK(sel.m2 == nodes_with(TestbedRole::blocked_by_subset));
  CHECK(sel.selected() == tb.expected_fair_set);
  CHECK(sel.rejected.at(tb.s5) == RejectionReason::no_witness_subset);
  CHECK_FALSE(sel.empty_mb_y);
  check_invariants(sel, d);

  FairCfsConfig par;
  par.parallel = true;
  const auto again = select_fair_features(d, par);
  CHECK(again.selected() == sel.selected());
  CHECK(again.witnesses == sel.witnesses);
  CHECK(again.tests_performed == sel.tests_performed);

  FairCfsConfig iamb;
  iamb.algorithm = mb::Algorithm::iamb;
  check_invariants(select_fair_features(d, iamb), d);
}

TEST_CASE("extended search admits step 2 failures through subsets") {
  const auto& d = testbed_data();
  FairCfsConfig cfg;
  cfg.extended_search = true;
  const auto sel = select_fair_features(d, cfg);
  check_invariants(sel, d);
  CHECK(sel.selected() == testbed().expected_fair_set);
}

TEST_CASE("independent label gives an empty selection") {
  const auto& base = testbed_data();
  Rng rng(77);
  std::vector<data::Column> cols;
  for (int j = 0; j < base.n_cols(); ++j) cols.push_back(base.column(j));
  auto& y = cols[static_cast<std::size_t>(base.label())];
  for (auto& v : y.codes) v = static_cast<int>(uniform_index(rng, 2));
  const data::Dataset d(std::move(cols));
  const auto sel = select_fair_features(d, {});
  CHECK(sel.mb_y.empty());
  CHECK(sel.empty_mb_y);
  CHECK(sel.selected().empty());
}

TEST_CASE("isolated sensitive column admits the whole blanket through step 2") {
  const auto& base = testbed_data();
  Rng rng(78);
  std::vector<data::Column> cols;
  for (int j = 0; j < base.n_cols(); ++j) cols.push_back(base.column(j));
  auto& s = cols[static_cast<std::size_t>(base.sensitive())];
  for (auto& v : s.codes) v = static_cast<int>(uniform_index(rng, 2));
  const data::Dataset d(std::move(cols));
  const auto sel = select_fair_features(d, {});
  CHECK(sel.mb_s.empty());
  CHECK(sel.m2.empty());
  CHECK(sel.m1 == sel.mb_y);
  check_invariants(sel, d);
}

TEST_CASE("oracle agreement does not drop as samples grow") {
  const auto& tb = testbed();
  std::vector<int> hits;
  for (std::size_t n : {1000, 10000, 100000}) {
    int h = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      h += select_fair_features(graph::sample(tb.bn, n, seed + 300), {}).selected() == tb.expected_fair_set;
    hits.push_back(h);
  }
  MESSAGE("oracle hits at n = 1e3, 1e4, 1e5: " << hits[0] << ", " << hits[1] << ", " << hits[2]);
  CHECK(hits[0] <= hits[1]);
  CHECK(hits[1] <= hits[2]);
  CHECK(hits[2] >= 18);
}

TEST_CASE("selection requires roles") {
  const data::Dataset d({{"a", 2, data::Role::feature, {0, 1}, {}}, {"b", 2, data::Role::feature, {1, 0}, {}}});
  CHECK_THROWS_AS(select_fair_features(d, {}), DataError);
}

TEST_CASE("report names columns") {
  const auto& d = testbed_data();
  const auto sel = select_fair_features(d, {});
  const auto j = to_json(sel, d);
  CHECK(j.at("m2") == nlohmann::json::array({"X4"}));
  CHECK(j.at("selected") == nlohmann::json::array({"X1", "X2", "X3", "X4"}));
  CHECK(j.at("rejected").at("S5") == "no_witness_subset");
  CHECK(to_string(RejectionReason::dependent_given_mbs) == "dependent_given_mbs");
}

}  // TEST_SUITE
