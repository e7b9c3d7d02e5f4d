#include "fakedet/decision_tree.hpp"

#include <algorithm>
#include <numeric>

#include "fakedet/errors.hpp"

namespace fakedet {

double gini_impurity(std::span<const std::int64_t> class_counts,
                     std::int64_t total) {
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  const double n = static_cast<double>(total);
  for (std::int64_t c : class_counts) {
    const double p = static_cast<double>(c) / n;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

double split_impurity(std::span<const std::int64_t> left_counts,
                      std::int64_t left_total,
                      std::span<const std::int64_t> right_counts,
                      std::int64_t right_total) {
  const double n = static_cast<double>(left_total + right_total);
  return (static_cast<double>(left_total) / n) *
             gini_impurity(left_counts, left_total) +
         (static_cast<double>(right_total) / n) *
             gini_impurity(right_counts, right_total);
}

namespace {

struct BestSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

struct Workspace {
  const Matrix& X;
  const std::vector<int>& y;
  int num_classes;
  TreeParams params;
  int features_per_split;  // 0 = consider every feature
  Rng* rng;
  std::vector<double> importance;
  double total_rows;
};

int majority_class(std::span<const std::int64_t> counts) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(counts.size()); ++c) {
    if (counts[c] > counts[best]) best = c;  // ties keep the lowest index
  }
  return best;
}

std::vector<int> candidate_features(Workspace& ws, int num_features) {
  std::vector<int> features(static_cast<std::size_t>(num_features));
  std::iota(features.begin(), features.end(), 0);
  if (ws.features_per_split <= 0 || ws.features_per_split >= num_features) {
    return features;
  }
  // Partial Fisher-Yates, then ascending order so the lowest-feature
  // tie-break applies within the sample too.
  for (int i = 0; i < ws.features_per_split; ++i) {
    const int j = static_cast<int>(
        ws.rng->uniform_int(i, num_features - 1));
    std::swap(features[static_cast<std::size_t>(i)],
              features[static_cast<std::size_t>(j)]);
  }
  features.resize(static_cast<std::size_t>(ws.features_per_split));
  std::sort(features.begin(), features.end());
  return features;
}

BestSplit find_best_split(Workspace& ws, std::span<const int> rows,
                          std::span<const std::int64_t> node_counts) {
  const int num_features = static_cast<int>(ws.X[0].size());
  const std::vector<int> features = candidate_features(ws, num_features);

  BestSplit best;
  std::vector<std::pair<double, int>> values(rows.size());  // (x, class)
  std::vector<std::int64_t> left(static_cast<std::size_t>(ws.num_classes));
  std::vector<std::int64_t> right(static_cast<std::size_t>(ws.num_classes));

  for (int f : features) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int row = rows[i];
      values[i] = {ws.X[static_cast<std::size_t>(row)][static_cast<std::size_t>(f)],
                   ws.y[static_cast<std::size_t>(row)]};
    }
    std::sort(values.begin(), values.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::fill(left.begin(), left.end(), 0);
    std::copy(node_counts.begin(), node_counts.end(), right.begin());
    std::int64_t n_left = 0;
    std::int64_t n_right = static_cast<std::int64_t>(rows.size());

    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      ++left[static_cast<std::size_t>(values[i].second)];
      --right[static_cast<std::size_t>(values[i].second)];
      ++n_left;
      --n_right;
      if (values[i].first == values[i + 1].first) continue;
      const double impurity = split_impurity(left, n_left, right, n_right);
      // Strict improvement only: scanning features then thresholds in
      // ascending order makes equal-impurity ties land on the lowest
      // feature index / lowest threshold.
      if (!best.found || impurity < best.impurity) {
        best.found = true;
        best.feature = f;
        best.threshold = (values[i].first + values[i + 1].first) / 2.0;
        best.impurity = impurity;
      }
    }
  }
  return best;
}

int build_node(Workspace& ws, std::vector<TreeNode>& nodes,
               std::vector<int>& rows_storage, std::size_t begin,
               std::size_t end, int depth) {
  const std::span<const int> rows(rows_storage.data() + begin, end - begin);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(ws.num_classes), 0);
  for (int row : rows) ++counts[static_cast<std::size_t>(ws.y[static_cast<std::size_t>(row)])];
  const std::int64_t n = static_cast<std::int64_t>(rows.size());

  const bool pure =
      std::count_if(counts.begin(), counts.end(),
                    [](std::int64_t c) { return c > 0; }) <= 1;
  const bool depth_capped =
      ws.params.max_depth.has_value() && depth >= *ws.params.max_depth;
  const bool too_small = n < ws.params.min_samples_split;

  const int node_index = static_cast<int>(nodes.size());
  nodes.emplace_back();

  if (pure || depth_capped || too_small) {
    nodes[static_cast<std::size_t>(node_index)].leaf_class = majority_class(counts);
    return node_index;
  }

  const BestSplit best = find_best_split(ws, rows, counts);
  if (!best.found) {  // all candidate features constant on this node
    nodes[static_cast<std::size_t>(node_index)].leaf_class = majority_class(counts);
    return node_index;
  }

  ws.importance[static_cast<std::size_t>(best.feature)] +=
      (static_cast<double>(n) / ws.total_rows) *
      (gini_impurity(counts, n) - best.impurity);

  // Partition rows in place; [begin, mid) goes left.
  auto* first = rows_storage.data() + begin;
  auto* last = rows_storage.data() + end;
  auto* mid_ptr = std::partition(first, last, [&](int row) {
    return ws.X[static_cast<std::size_t>(row)][static_cast<std::size_t>(best.feature)] <=
           best.threshold;
  });
  const std::size_t mid = begin + static_cast<std::size_t>(mid_ptr - first);

  nodes[static_cast<std::size_t>(node_index)].feature = best.feature;
  nodes[static_cast<std::size_t>(node_index)].threshold = best.threshold;
  const int left = build_node(ws, nodes, rows_storage, begin, mid, depth + 1);
  nodes[static_cast<std::size_t>(node_index)].left = left;
  const int right = build_node(ws, nodes, rows_storage, mid, end, depth + 1);
  nodes[static_cast<std::size_t>(node_index)].right = right;
  return node_index;
}

}  // namespace

int DecisionTreeModel::predict(std::span<const double> x) const {
  int index = 0;
  while (nodes[static_cast<std::size_t>(index)].feature >= 0) {
    const TreeNode& node = nodes[static_cast<std::size_t>(index)];
    index = x[static_cast<std::size_t>(node.feature)] <= node.threshold
                ? node.left
                : node.right;
  }
  return nodes[static_cast<std::size_t>(index)].leaf_class;
}

DecisionTreeModel train_decision_tree(const Matrix& X,
                                      const std::vector<int>& y,
                                      int num_classes,
                                      const TreeParams& params) {
  std::vector<int> rows(X.size());
  std::iota(rows.begin(), rows.end(), 0);
  return train_decision_tree(X, y, rows, num_classes, params, 0, nullptr);
}

DecisionTreeModel train_decision_tree(const Matrix& X,
                                      const std::vector<int>& y,
                                      std::span<const int> rows,
                                      int num_classes,
                                      const TreeParams& params,
                                      int features_per_split, Rng* rng) {
  if (X.empty() || rows.empty()) throw TrainError("decision tree: empty training set");
  if (X.size() != y.size()) throw TrainError("decision tree: X/y size mismatch");
  if (params.min_samples_split < 2) throw TrainError("decision tree: min_samples_split must be >= 2");

  Workspace ws{X,
               y,
               num_classes,
               params,
               features_per_split,
               rng,
               std::vector<double>(X[0].size(), 0.0),
               static_cast<double>(rows.size())};

  std::vector<int> rows_storage(rows.begin(), rows.end());
  DecisionTreeModel model;
  model.num_classes = num_classes;
  model.num_features = static_cast<int>(X[0].size());
  build_node(ws, model.nodes, rows_storage, 0, rows_storage.size(), 0);
  model.gini_importance = std::move(ws.importance);
  return model;
}

}  // namespace fakedet
