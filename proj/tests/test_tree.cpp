#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fakedet/decision_tree.hpp"
#include "fakedet/errors.hpp"
#include "fakedet/rng.hpp"
#include "oracles.hpp"

using namespace fakedet;

namespace {

double training_accuracy(const DecisionTreeModel& tree, const Matrix& x,
                         const std::vector<int>& y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (tree.predict(x[i]) == y[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(x.size());
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("perfectly separable single feature splits at the midpoint") {
  const Matrix x = {{0.0}, {0.0}, {1.0}, {1.0}};
  const std::vector<int> y = {0, 0, 1, 1};
  const DecisionTreeModel tree = train_decision_tree(x, y, 2);
  REQUIRE(!tree.nodes.empty());
  CHECK(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == 0.5);
  CHECK(training_accuracy(tree, x, y) == 1.0);
}

TEST_CASE("pure dataset collapses to a single leaf") {
  const Matrix x = {{1.0, 2.0}, {3.0, 4.0}};
  const std::vector<int> y = {1, 1};
  const DecisionTreeModel tree = train_decision_tree(x, y, 2);
  CHECK(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].feature == -1);
  CHECK(tree.nodes[0].leaf_class == 1);
}

TEST_CASE("leaf ties resolve to the lowest class index") {
  // identical x, conflicting labels: no split possible
  const Matrix x = {{1.0}, {1.0}};
  const std::vector<int> y = {1, 0};
  const DecisionTreeModel tree = train_decision_tree(x, y, 2);
  CHECK(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].leaf_class == 0);
}

TEST_CASE("max_depth and min_samples_split stop growth") {
  const Matrix x = {{0.0}, {1.0}, {2.0}, {3.0}};
  const std::vector<int> y = {0, 1, 0, 1};
  TreeParams params;
  params.max_depth = 0;
  const DecisionTreeModel stump = train_decision_tree(x, y, 2, params);
  CHECK(stump.nodes.size() == 1);

  TreeParams min_split;
  min_split.min_samples_split = 5;
  const DecisionTreeModel blocked = train_decision_tree(x, y, 2, min_split);
  CHECK(blocked.nodes.size() == 1);
}

TEST_CASE("empty training set is rejected") {
  CHECK_THROWS_AS(train_decision_tree({}, {}, 2), TrainError);
}

TEST_CASE("root split equals the exhaustive oracle on 200 random datasets") {
  Rng rng(4242);
  for (int round = 0; round < 200; ++round) {
    Matrix x(20, std::vector<double>(3));
    std::vector<int> y(20);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double& v : x[i]) {
        // coarse grid forces duplicate values and impurity ties
        v = static_cast<double>(rng.uniform_int(0, 9)) / 2.0;
      }
      y[i] = static_cast<int>(rng.uniform_int(0, 2));
    }
    const oracle::Split expected = oracle::best_split(x, y, 3);
    const DecisionTreeModel tree = train_decision_tree(x, y, 3);
    if (!expected.found) {
      CHECK(tree.nodes[0].feature == -1);
      continue;
    }
    REQUIRE(tree.nodes[0].feature >= 0);
    // recompute the impurity of the chosen split through the oracle's
    // arithmetic to compare like with like
    CHECK(tree.nodes[0].feature == expected.feature);
    CHECK(tree.nodes[0].threshold == expected.threshold);
    const double impurity = oracle::weighted_split_impurity(
        x, y, 3, tree.nodes[0].feature, tree.nodes[0].threshold);
    CHECK(std::fabs(impurity - expected.impurity) <= 1e-12);
  }
}

TEST_CASE("unlimited depth fits any conflict-free dataset exactly") {
  Rng rng(777);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(5, 60));
    Matrix x(n, std::vector<double>(4));
    std::vector<int> y(n);
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < n; ++i) {
      do {
        for (double& v : x[i]) v = rng.normal();
      } while (!seen.insert(x[i]).second);
      y[i] = static_cast<int>(rng.uniform_int(0, 3));
    }
    const DecisionTreeModel tree = train_decision_tree(x, y, 4);
    CHECK(training_accuracy(tree, x, y) == 1.0);
  }
}

TEST_CASE("scaling a feature column leaves decisions unchanged") {
  Rng rng(31);
  Matrix x(40, std::vector<double>(3));
  std::vector<int> y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double& v : x[i]) v = rng.normal();
    y[i] = static_cast<int>(rng.uniform_int(0, 1));
  }
  Matrix scaled = x;
  for (auto& row : scaled) row[1] *= 10.0;

  const DecisionTreeModel t1 = train_decision_tree(x, y, 2);
  const DecisionTreeModel t2 = train_decision_tree(scaled, y, 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(t1.predict(x[i]) == t2.predict(scaled[i]));
  }
}

TEST_CASE("every internal node references a valid feature") {
  Rng rng(63);
  Matrix x(50, std::vector<double>(17));
  std::vector<int> y(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double& v : x[i]) v = rng.normal();
    y[i] = static_cast<int>(rng.uniform_int(0, 3));
  }
  const DecisionTreeModel tree = train_decision_tree(x, y, 4);
  for (const TreeNode& node : tree.nodes) {
    if (node.feature >= 0) {
      CHECK(node.feature < 17);
      CHECK(node.left >= 0);
      CHECK(node.right >= 0);
    } else {
      CHECK(node.leaf_class >= 0);
      CHECK(node.leaf_class < 4);
    }
  }
}

}  // TEST_SUITE
