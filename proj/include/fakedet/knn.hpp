#pragma once

#include <span>
#include <vector>

#include "fakedet/matrix.hpp"

namespace fakedet {

// Euclidean k-nearest-neighbors over pre-scaled features. Equal-distance
// ties go to the lower training index; a vote tie between classes goes
// to the nearest neighbor belonging to a tied class.
struct KnnModel {
  Matrix train_x;  // already scaled
  std::vector<int> train_y;
  int k = 5;
  int num_classes = 0;

  int predict(std::span<const double> x) const;
};

KnnModel train_knn(Matrix scaled_x, std::vector<int> y, int num_classes,
                   int k = 5);

}  // namespace fakedet
