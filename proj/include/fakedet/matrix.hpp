#pragma once

#include <vector>

#include "fakedet/types.hpp"

namespace fakedet {

// Row-major dataset; classifiers are dimension-agnostic.
using Matrix = std::vector<std::vector<double>>;

Matrix feature_matrix(const std::vector<LabeledExample>& examples);
std::vector<int> scheme_labels(const std::vector<LabeledExample>& examples,
                               Scheme scheme);

}  // namespace fakedet
