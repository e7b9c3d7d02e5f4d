#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fakedet/decision_tree.hpp"

namespace fakedet {

struct ForestParams {
  int n_trees = 100;
  int features_per_split = 0;  // 0 = floor(sqrt(num_features))
  bool bootstrap = true;       // test hook: off trains every tree on all rows
  TreeParams tree;
};

struct RandomForestModel {
  std::vector<DecisionTreeModel> trees;
  int num_classes = 0;
  int num_features = 0;

  // Majority vote, ties to the lowest class index.
  int predict(std::span<const double> x) const;
};

// Bagged CART trees with per-split feature subsampling. Tree i draws its
// bootstrap rows and feature subsets from an RNG seeded by (seed, i), so
// the result is independent of training order.
RandomForestModel train_random_forest(const Matrix& X,
                                      const std::vector<int>& y,
                                      int num_classes,
                                      const ForestParams& params,
                                      std::uint64_t seed);

// Mean decrease in Gini impurity per feature, averaged over trees and
// normalized to sum 1.
std::vector<double> feature_importance(const RandomForestModel& forest);

}  // namespace fakedet
