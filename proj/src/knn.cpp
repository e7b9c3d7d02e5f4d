#include "fakedet/knn.hpp"

#include <algorithm>

#include "fakedet/errors.hpp"

namespace fakedet {

KnnModel train_knn(Matrix scaled_x, std::vector<int> y, int num_classes,
                   int k) {
  if (scaled_x.empty()) throw TrainError("knn: empty training set");
  if (scaled_x.size() != y.size()) throw TrainError("knn: X/y size mismatch");
  if (k < 1) throw TrainError("knn: k must be >= 1");
  if (static_cast<std::size_t>(k) > scaled_x.size()) {
    throw TrainError("knn: k (" + std::to_string(k) +
                     ") exceeds training size (" +
                     std::to_string(scaled_x.size()) + ")");
  }
  return {std::move(scaled_x), std::move(y), k, num_classes};
}

int KnnModel::predict(std::span<const double> x) const {
  std::vector<std::pair<double, int>> dist(train_x.size());  // (d^2, index)
  for (std::size_t i = 0; i < train_x.size(); ++i) {
    double d2 = 0.0;
    const std::vector<double>& row = train_x[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double diff = row[j] - x[j];
      d2 += diff * diff;
    }
    dist[i] = {d2, static_cast<int>(i)};
  }
  const std::size_t kk = static_cast<std::size_t>(k);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk),
                    dist.end());  // pair ordering breaks ties by index

  std::vector<int> votes(static_cast<std::size_t>(num_classes), 0);
  for (std::size_t i = 0; i < kk; ++i) {
    ++votes[static_cast<std::size_t>(train_y[static_cast<std::size_t>(dist[i].second)])];
  }
  int max_votes = 0;
  for (int v : votes) max_votes = std::max(max_votes, v);
  // First neighbor whose class holds the maximum decides among ties.
  for (std::size_t i = 0; i < kk; ++i) {
    const int cls = train_y[static_cast<std::size_t>(dist[i].second)];
    if (votes[static_cast<std::size_t>(cls)] == max_votes) return cls;
  }
  return 0;  // unreachable for k >= 1
}

}  // namespace fakedet
