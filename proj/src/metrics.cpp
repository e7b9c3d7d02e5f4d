#include "fakedet/metrics.hpp"

#include "fakedet/errors.hpp"

namespace fakedet {

std::int64_t ConfusionMatrix::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

ConfusionMatrix ConfusionMatrix::from_predictions(
    const std::vector<int>& truth, const std::vector<int>& pred,
    int num_classes) {
  if (truth.size() != pred.size()) {
    throw DataError("confusion matrix: truth/prediction size mismatch");
  }
  ConfusionMatrix cm(num_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++cm.at(truth[i], pred[i]);
  }
  return cm;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
  const std::int64_t total = cm.total();
  if (total == 0) throw DataError("compute_metrics: empty confusion matrix");

  Metrics m;
  const int c = cm.num_classes;
  m.precision.resize(static_cast<std::size_t>(c), 0.0);
  m.recall.resize(static_cast<std::size_t>(c), 0.0);
  m.f1.resize(static_cast<std::size_t>(c), 0.0);

  std::int64_t trace = 0;
  for (int k = 0; k < c; ++k) trace += cm.at(k, k);
  m.accuracy = static_cast<double>(trace) / static_cast<double>(total);

  for (int k = 0; k < c; ++k) {
    std::int64_t tp = cm.at(k, k), fp = 0, fn = 0;
    for (int other = 0; other < c; ++other) {
      if (other == k) continue;
      fp += cm.at(other, k);
      fn += cm.at(k, other);
    }
    const std::size_t ki = static_cast<std::size_t>(k);
    m.precision[ki] = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall[ki] = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1[ki] = m.precision[ki] + m.recall[ki] > 0.0
                   ? 2.0 * m.precision[ki] * m.recall[ki] /
                         (m.precision[ki] + m.recall[ki])
                   : 0.0;

    const std::int64_t support = tp + fn;
    const double w = static_cast<double>(support) / static_cast<double>(total);
    m.macro_precision += m.precision[ki] / c;
    m.macro_recall += m.recall[ki] / c;
    m.macro_f1 += m.f1[ki] / c;
    m.weighted_precision += w * m.precision[ki];
    m.weighted_recall += w * m.recall[ki];
    m.weighted_f1 += w * m.f1[ki];
  }
  return m;
}

}  // namespace fakedet
