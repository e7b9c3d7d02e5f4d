#pragma once

#include <cstdint>
#include <vector>

namespace fakedet {

struct ConfusionMatrix {
  int num_classes = 0;
  std::vector<std::int64_t> counts;  // rows = truth, columns = prediction

  explicit ConfusionMatrix(int classes = 0)
      : num_classes(classes),
        counts(static_cast<std::size_t>(classes) * classes, 0) {}

  std::int64_t& at(int truth, int pred) {
    return counts[static_cast<std::size_t>(truth) * num_classes + pred];
  }
  std::int64_t at(int truth, int pred) const {
    return counts[static_cast<std::size_t>(truth) * num_classes + pred];
  }
  std::int64_t total() const;

  static ConfusionMatrix from_predictions(const std::vector<int>& truth,
                                          const std::vector<int>& pred,
                                          int num_classes);
};

// Per-class precision/recall/F1 use the 0-when-undefined convention.
// Macro averages are unweighted over classes; weighted averages use
// true-class support.
struct Metrics {
  double accuracy = 0.0;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
};

Metrics compute_metrics(const ConfusionMatrix& cm);

}  // namespace fakedet
