#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fakedet/matrix.hpp"
#include "fakedet/rng.hpp"

namespace fakedet {

struct TreeParams {
  std::optional<int> max_depth;  // unset = unlimited
  int min_samples_split = 2;
};

struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;  // left branch takes value <= threshold
  int left = -1;
  int right = -1;
  int leaf_class = -1;
};

struct DecisionTreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int num_classes = 0;
  int num_features = 0;
  // Unnormalized mean-decrease-in-impurity accumulated at fit time.
  std::vector<double> gini_importance;

  int predict(std::span<const double> x) const;
};

// CART with Gini impurity. At each node the (feature, threshold) pair
// minimizing the weighted child impurity is chosen over all candidate
// features and all midpoints between consecutive distinct sorted values;
// equal-impurity ties go to the lowest feature index, then the lowest
// threshold. Leaf labels are the majority class, ties to the lowest
// class index.
DecisionTreeModel train_decision_tree(const Matrix& X,
                                      const std::vector<int>& y,
                                      int num_classes,
                                      const TreeParams& params = {});

// Variant used by the forest: trains on a row subset and, when
// features_per_split > 0, draws that many candidate features at each
// node from rng.
DecisionTreeModel train_decision_tree(const Matrix& X,
                                      const std::vector<int>& y,
                                      std::span<const int> rows,
                                      int num_classes,
                                      const TreeParams& params,
                                      int features_per_split, Rng* rng);

// Weighted Gini impurity of a candidate split, written as one shared
// expression so independent recomputations of the same counts are
// bit-identical.
double gini_impurity(std::span<const std::int64_t> class_counts,
                     std::int64_t total);
double split_impurity(std::span<const std::int64_t> left_counts,
                      std::int64_t left_total,
                      std::span<const std::int64_t> right_counts,
                      std::int64_t right_total);

}  // namespace fakedet
