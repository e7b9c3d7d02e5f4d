#include <doctest.h>

#include <cmath>

#include "fakedet/errors.hpp"
#include "fakedet/evaluation.hpp"
#include "fakedet/features.hpp"
#include "fakedet/matrix.hpp"
#include "fakedet/random_forest.hpp"
#include "fakedet/rng.hpp"
#include "fakedet/synth.hpp"

using namespace fakedet;

namespace {

std::pair<Matrix, std::vector<int>> make_dataset(Rng& rng, int n, int d,
                                                int classes) {
  Matrix x(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(d)));
  std::vector<int> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (double& v : x[static_cast<std::size_t>(i)]) v = rng.normal();
    y[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(0, classes - 1));
  }
  return {std::move(x), std::move(y)};
}

}  // namespace

TEST_SUITE("forest") {

TEST_CASE("degenerate ensemble equals a plain tree") {
  Rng rng(12);
  auto [x, y] = make_dataset(rng, 80, 5, 3);
  ForestParams params;
  params.n_trees = 1;
  params.bootstrap = false;
  params.features_per_split = 5;  // all features -> no subsampling
  const RandomForestModel forest = train_random_forest(x, y, 3, params, 7);
  const DecisionTreeModel tree = train_decision_tree(x, y, 3);
  for (const auto& row : x) {
    CHECK(forest.predict(row) == tree.predict(row));
  }
}

TEST_CASE("same seed gives identical forests, different seeds differ") {
  Rng rng(3);
  auto [x, y] = make_dataset(rng, 60, 4, 2);
  ForestParams params;
  params.n_trees = 10;
  const RandomForestModel a = train_random_forest(x, y, 2, params, 42);
  const RandomForestModel b = train_random_forest(x, y, 2, params, 42);
  REQUIRE(a.trees.size() == b.trees.size());
  for (std::size_t t = 0; t < a.trees.size(); ++t) {
    REQUIRE(a.trees[t].nodes.size() == b.trees[t].nodes.size());
    for (std::size_t k = 0; k < a.trees[t].nodes.size(); ++k) {
      CHECK(a.trees[t].nodes[k].feature == b.trees[t].nodes[k].feature);
      CHECK(a.trees[t].nodes[k].threshold == b.trees[t].nodes[k].threshold);
      CHECK(a.trees[t].nodes[k].leaf_class == b.trees[t].nodes[k].leaf_class);
    }
  }
  const RandomForestModel c = train_random_forest(x, y, 2, params, 43);
  bool any_diff = false;
  for (std::size_t t = 0; t < a.trees.size() && !any_diff; ++t) {
    if (a.trees[t].nodes.size() != c.trees[t].nodes.size()) any_diff = true;
  }
  // identical forests from different seeds would make bagging pointless
  CHECK(any_diff);
}

TEST_CASE("n_trees = 0 is rejected") {
  ForestParams params;
  params.n_trees = 0;
  CHECK_THROWS_AS(train_random_forest({{1.0}}, {0}, 2, params, 1), TrainError);
}

TEST_CASE("held-out accuracy keeps up with a single tree") {
  const auto dataset = generate_dataset(default_profiles(), 200, 1);
  std::vector<LabeledExample> examples;
  for (const LabeledAccount& la : dataset) {
    LabeledExample ex;
    ex.account_id = la.account.account_id;
    ex.features = extract_features(la.account);
    ex.label = la.label;
    examples.push_back(std::move(ex));
  }
  const SplitResult split = stratified_split(examples, 0.25, 1);

  Matrix train_x, test_x;
  std::vector<int> train_y, test_y;
  for (std::size_t i : split.train_indices) {
    const auto row = examples[i].features.to_array();
    train_x.emplace_back(row.begin(), row.end());
    train_y.push_back(binary_label(examples[i].label));
  }
  for (std::size_t i : split.test_indices) {
    const auto row = examples[i].features.to_array();
    test_x.emplace_back(row.begin(), row.end());
    test_y.push_back(binary_label(examples[i].label));
  }

  const DecisionTreeModel tree = train_decision_tree(train_x, train_y, 2);
  const RandomForestModel forest =
      train_random_forest(train_x, train_y, 2, {}, 1);
  auto accuracy = [&](auto&& model) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < test_x.size(); ++i) {
      if (model.predict(test_x[i]) == test_y[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(test_x.size());
  };
  CHECK(accuracy(forest) >= accuracy(tree) - 0.02);
}

TEST_CASE("feature importance singles out the only informative feature") {
  Rng rng(21);
  Matrix x(600, std::vector<double>(5));
  std::vector<int> y(600);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double& v : x[i]) v = rng.normal();
    // label determined by feature 0 alone, with a clean margin
    y[i] = i % 2 == 0 ? 1 : 0;
    x[i][0] = (y[i] == 1 ? 1.0 : -1.0) * (1.0 + std::fabs(rng.normal()));
  }
  const RandomForestModel forest = train_random_forest(x, y, 2, {}, 5);
  const std::vector<double> importance = feature_importance(forest);
  double total = 0;
  for (double v : importance) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(importance[0] > 0.9);
}

TEST_CASE("scaling one feature column leaves forest predictions unchanged") {
  Rng rng(77);
  auto [x, y] = make_dataset(rng, 100, 4, 2);
  Matrix scaled = x;
  for (auto& row : scaled) row[2] *= 10.0;
  ForestParams params;
  params.n_trees = 20;
  const RandomForestModel f1 = train_random_forest(x, y, 2, params, 3);
  const RandomForestModel f2 = train_random_forest(scaled, y, 2, params, 3);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(f1.predict(x[i]) == f2.predict(scaled[i]));
  }
}

}  // TEST_SUITE
