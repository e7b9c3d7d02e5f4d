#include "fakedet/random_forest.hpp"

#include <cmath>
#include <numeric>

#include "fakedet/errors.hpp"

namespace fakedet {

int RandomForestModel::predict(std::span<const double> x) const {
  std::vector<int> votes(static_cast<std::size_t>(num_classes), 0);
  for (const DecisionTreeModel& tree : trees) {
    ++votes[static_cast<std::size_t>(tree.predict(x))];
  }
  int best = 0;
  for (int c = 1; c < num_classes; ++c) {
    if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) {
      best = c;
    }
  }
  return best;
}

RandomForestModel train_random_forest(const Matrix& X,
                                      const std::vector<int>& y,
                                      int num_classes,
                                      const ForestParams& params,
                                      std::uint64_t seed) {
  if (params.n_trees < 1) throw TrainError("random forest: n_trees must be >= 1");
  if (X.empty()) throw TrainError("random forest: empty training set");

  const int num_features = static_cast<int>(X[0].size());
  const int features_per_split =
      params.features_per_split > 0
          ? params.features_per_split
          : static_cast<int>(std::floor(std::sqrt(static_cast<double>(num_features))));

  RandomForestModel forest;
  forest.num_classes = num_classes;
  forest.num_features = num_features;
  forest.trees.reserve(static_cast<std::size_t>(params.n_trees));

  const int n = static_cast<int>(X.size());
  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<int> rows(static_cast<std::size_t>(n));
    if (params.bootstrap) {
      for (int& r : rows) r = static_cast<int>(rng.uniform_int(0, n - 1));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    forest.trees.push_back(train_decision_tree(
        X, y, rows, num_classes, params.tree, features_per_split, &rng));
  }
  return forest;
}

std::vector<double> feature_importance(const RandomForestModel& forest) {
  if (forest.trees.empty()) throw TrainError("feature importance: empty forest");
  std::vector<double> importance(static_cast<std::size_t>(forest.num_features), 0.0);
  for (const DecisionTreeModel& tree : forest.trees) {
    for (std::size_t j = 0; j < importance.size(); ++j) {
      importance[j] += tree.gini_importance[j];
    }
  }
  double total = 0.0;
  for (double v : importance) total += v;
  if (total > 0.0) {
    for (double& v : importance) v /= total;
  }
  return importance;
}

}  // namespace fakedet
