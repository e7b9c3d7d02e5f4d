#include "fakedet/scaler.hpp"

#include <cmath>

#include "fakedet/errors.hpp"

namespace fakedet {

StandardScaler StandardScaler::fit(const Matrix& train) {
  if (train.empty()) throw TrainError("scaler: empty training set");
  const std::size_t d = train[0].size();
  StandardScaler scaler;
  scaler.mean.assign(d, 0.0);
  scaler.stddev.assign(d, 0.0);
  const double n = static_cast<double>(train.size());
  for (const auto& row : train) {
    for (std::size_t j = 0; j < d; ++j) scaler.mean[j] += row[j];
  }
  for (std::size_t j = 0; j < d; ++j) scaler.mean[j] /= n;
  for (const auto& row : train) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = row[j] - scaler.mean[j];
      scaler.stddev[j] += diff * diff;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    scaler.stddev[j] = std::sqrt(scaler.stddev[j] / n);
  }
  return scaler;
}

std::vector<double> StandardScaler::transform_row(
    std::span<const double> row) const {
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = stddev[j] == 0.0 ? 0.0 : (row[j] - mean[j]) / stddev[j];
  }
  return out;
}

Matrix StandardScaler::transform(const Matrix& data) const {
  Matrix out;
  out.reserve(data.size());
  for (const auto& row : data) out.push_back(transform_row(row));
  return out;
}

}  // namespace fakedet
