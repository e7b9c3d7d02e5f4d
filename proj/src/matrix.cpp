#include "fakedet/matrix.hpp"

namespace fakedet {

Matrix feature_matrix(const std::vector<LabeledExample>& examples) {
  Matrix m;
  m.reserve(examples.size());
  for (const LabeledExample& ex : examples) {
    const auto row = ex.features.to_array();
    m.emplace_back(row.begin(), row.end());
  }
  return m;
}

std::vector<int> scheme_labels(const std::vector<LabeledExample>& examples,
                               Scheme scheme) {
  std::vector<int> labels;
  labels.reserve(examples.size());
  for (const LabeledExample& ex : examples) {
    labels.push_back(scheme_label(ex.label, scheme));
  }
  return labels;
}

}  // namespace fakedet
