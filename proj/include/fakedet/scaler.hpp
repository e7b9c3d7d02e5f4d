#pragma once

#include <span>
#include <vector>

#include "fakedet/matrix.hpp"

namespace fakedet {

// Per-feature z-scoring with population moments, fitted on training data
// only. Constant features transform to 0.
struct StandardScaler {
  std::vector<double> mean;
  std::vector<double> stddev;

  static StandardScaler fit(const Matrix& train);

  std::vector<double> transform_row(std::span<const double> row) const;
  Matrix transform(const Matrix& data) const;
};

}  // namespace fakedet
