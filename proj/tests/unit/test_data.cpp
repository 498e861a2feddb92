#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "faircfs/data/csv.hpp"
#include "faircfs/data/dataset.hpp"
#include "faircfs/data/discretize.hpp"
#include "faircfs/data/folds.hpp"
#include "faircfs/error.hpp"
#include "faircfs/random.hpp"

using namespace faircfs;
using namespace faircfs::data;

namespace {

std::vector<int> bins(std::vector<double> v, int n) { return discretize(v, n); }

Dataset labelled(const std::vector<int>& y) {
  std::vector<int> s(y.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<int>(i % 2);
  return Dataset({{"S", 2, Role::sensitive, s, {}}, {"Y", 2, Role::label, y, {}}});
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("discretize worked cases") {
  CHECK(bins({3, 1, 2, 4}, 2) == std::vector<int>{1, 0, 0, 1});
  CHECK(bins({7, 7, 7}, 3) == std::vector<int>{0, 0, 0});
  CHECK(bins({10, 20}, 2) == std::vector<int>{0, 1});
  CHECK(bins({1, 2, 3, 4, 5}, 5) == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("discretize rejects bad input") {
  CHECK_THROWS_AS(bins({1, 2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(bins({}, 3), std::invalid_argument);
}

TEST_CASE("discretize is permutation equivariant and monotone") {
  Rng rng(42);
  std::vector<double> v(200);
  for (auto& x : v) x = std::floor(uniform01(rng) * 50.0);
  const auto codes = discretize(v, 4);
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(std::span<std::size_t>(perm), rng);
  std::vector<double> pv;
  for (auto i : perm) pv.push_back(v[i]);
  const auto pcodes = discretize(pv, 4);
  for (std::size_t i = 0; i < perm.size(); ++i) CHECK(pcodes[i] == codes[perm[i]]);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[i] < v[j]) CHECK(codes[i] <= codes[j]);
  const int top = *std::max_element(codes.begin(), codes.end());
  for (int c = 0; c <= top; ++c) CHECK(std::count(codes.begin(), codes.end(), c) > 0);
}

TEST_CASE("stratified folds balance labels") {
  std::vector<int> y(10);
  for (int i = 5; i < 10; ++i) y[static_cast<std::size_t>(i)] = 1;
  const auto f = stratified_folds(labelled(y), 5, 3);
  for (int k = 0; k < 5; ++k) {
    const auto test = f.test_rows(k);
    REQUIRE(test.size() == 2);
    int pos = 0;
    for (auto r : test) pos += y[r];
    CHECK(pos == 1);
  }

  std::vector<int> y2(100);
  for (int i = 0; i < 30; ++i) y2[static_cast<std::size_t>(i)] = 1;
  const auto f2 = stratified_folds(labelled(y2), 10, 7);
  for (int k = 0; k < 10; ++k) {
    int pos = 0;
    for (auto r : f2.test_rows(k)) pos += y2[r];
    CHECK(pos == 3);
  }
}

TEST_CASE("stratified folds partition rows and repeat under a seed") {
  std::vector<int> y(37);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 3 == 0;
  const auto d = labelled(y);
  const auto a = stratified_folds(d, 4, 11);
  const auto b = stratified_folds(d, 4, 11);
  CHECK(a.fold_of_row == b.fold_of_row);
  std::vector<int> seen(y.size(), 0);
  for (int k = 0; k < 4; ++k) {
    const auto test = a.test_rows(k);
    const auto train = a.train_rows(k);
    CHECK(test.size() + train.size() == y.size());
    for (auto r : test) ++seen[r];
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  CHECK_THROWS_AS(stratified_folds(d, 1, 1), ConfigError);
  CHECK_THROWS_AS(stratified_folds(d, 38, 1), ConfigError);
}

TEST_CASE("set helpers") {
  CHECK(make_set({3, 1, 3, 2}) == VarSet{1, 2, 3});
  CHECK(set_union({1, 3}, {2, 3}) == VarSet{1, 2, 3});
  CHECK(set_intersection({1, 3, 5}, {3, 4, 5}) == VarSet{3, 5});
  CHECK(set_difference({1, 3, 5}, {3}) == VarSet{1, 5});
  CHECK(contains({1, 4}, 4));
  CHECK_FALSE(contains({1, 4}, 2));
}

TEST_CASE("dataset validation and roles") {
  CHECK_THROWS_AS(Dataset({{"a", 2, Role::feature, {0, 2}, {}}}), DataError);
  CHECK_THROWS_AS(Dataset({{"a", 2, Role::feature, {0, 1}, {}}, {"b", 2, Role::feature, {0}, {}}}), DataError);
  const auto d = labelled({0, 1, 1, 0});
  CHECK(d.sensitive() == 0);
  CHECK(d.label() == 1);
  CHECK(d.has_roles());
  const auto swapped = d.with_roles(1, 0);
  CHECK(swapped.sensitive() == 1);
  const std::vector<std::size_t> rows{3, 1};
  const auto sub = d.select_rows(rows);
  CHECK(sub.n_rows() == 2);
  CHECK(sub.codes(1)[0] == 0);
  CHECK(sub.codes(1)[1] == 1);
  CHECK_THROWS_AS(d.index_of("nope"), DataError);
}

TEST_CASE("csv four-row binary example") {
  Schema schema;
  schema.sensitive = "s";
  schema.label = "y";
  const auto r = parse_csv("s,x,y\n0,1,1\n1,0,0\n0,0,1\n1,1,0\n", schema);
  const auto& d = r.dataset;
  CHECK(r.dropped_rows == 0);
  CHECK(d.n_rows() == 4);
  CHECK(d.n_cols() == 3);
  CHECK(d.sensitive() == 0);
  CHECK(d.label() == 2);
  for (int j = 0; j < 3; ++j) CHECK(d.arity(j) == 2);
  CHECK(d.decode(1, d.codes(1)[0]) == "1");
}

TEST_CASE("csv errors and missing values") {
  Schema schema;
  schema.sensitive = "s";
  schema.label = "y";
  CHECK_THROWS_WITH_AS(parse_csv("s,x,y\n0,1\n", schema), doctest::Contains("row length mismatch at line 2"),
                       DataError);
  const auto r = parse_csv("s,x,y\n0,?,1\n1,0,0\n0,NA,1\n1,1,0\n", schema);
  CHECK(r.dropped_rows == 2);
  CHECK(r.dataset.n_rows() == 2);
  Schema bad = schema;
  bad.sensitive = "gender";
  CHECK_THROWS_AS(parse_csv("s,x,y\n0,1,1\n", bad), DataError);
}

TEST_CASE("csv numeric binning and label binarization") {
  const auto schema = Schema::parse(
      "sensitive = sex\nlabel = income\npositive = >50K\ntype.age = numeric\nbins.age = 2\nlevels.sex = f, m\n");
  const auto r = parse_csv("age,sex,income\n20,m,<=50K\n60,f,>50K\n30,m,>50K\n50,f,<=50K\n", schema);
  const auto& d = r.dataset;
  const int age = d.index_of("age");
  CHECK(std::vector<int>(d.codes(age).begin(), d.codes(age).end()) == std::vector<int>{0, 1, 0, 1});
  const int sex = d.index_of("sex");
  CHECK(d.decode(sex, 0) == "f");
  CHECK(std::vector<int>(d.codes(sex).begin(), d.codes(sex).end()) == std::vector<int>{1, 0, 1, 0});
  const int y = d.label();
  CHECK(std::vector<int>(d.codes(y).begin(), d.codes(y).end()) == std::vector<int>{0, 1, 1, 0});
}

TEST_CASE("csv quoting and categorical round trip") {
  CHECK(split_csv_line("a,\"b,c\",\"d\"\"e\"") == std::vector<std::string>{"a", "b,c", "d\"e"});
  Schema schema;
  schema.sensitive = "s";
  schema.label = "y";
  const std::string text = "s,x,y\nf,red,no\nm,blue,yes\nf,green,yes\n";
  const auto first = parse_csv(text, schema).dataset;
  const auto again = parse_csv(to_csv(first), schema).dataset;
  CHECK(to_csv(first) == to_csv(again));
  CHECK(to_csv(first) == text);
}

TEST_CASE("schema text round trip") {
  const auto s = Schema::parse("sensitive = a\nlabel = b\nbins = 4\ntype.c = numeric\n");
  const auto t = Schema::parse(s.to_string());
  CHECK(t.sensitive == "a");
  CHECK(t.label == "b");
  CHECK(t.default_bins == 4);
  CHECK(t.columns.at("c").type == ColumnType::numeric);
  CHECK(is_missing(""));
  CHECK(is_missing("?"));
  CHECK(is_missing("NaN"));
  CHECK_FALSE(is_missing("0"));
}

}  // TEST_SUITE
