#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fakedet/matrix.hpp"

namespace fakedet {

enum class KernelType { Polynomial, Rbf };

struct KernelSpec {
  KernelType type = KernelType::Polynomial;
  int degree = 3;                // polynomial only
  std::optional<double> gamma;   // unset = resolved from training data
  double coef0 = 1.0;            // polynomial only
};

// gamma defaults: polynomial 1/d; RBF 1/(d * mean feature variance).
double resolve_gamma(const KernelSpec& spec, const Matrix& train_x);
double kernel_value(const KernelSpec& spec, double gamma,
                    std::span<const double> a, std::span<const double> b);

struct SmoOptions {
  double C = 1.0;
  double tol = 1e-3;       // KKT violation tolerance
  int max_passes = 1;      // consecutive violation-free full sweeps to stop
  int max_sweeps = 500;    // hard cap on total sweeps
  bool track_objective = false;  // record the dual objective per accepted step
};

struct BinarySvm {
  Matrix support_vectors;
  std::vector<double> alpha_y;  // alpha_i * y_i per support vector
  double bias = 0.0;
};

struct BinaryTrainResult {
  BinarySvm machine;
  std::vector<double> alpha;  // over all training points, for diagnostics
  double bias = 0.0;
  std::vector<double> objective_trace;  // filled when track_objective is on
  int sweeps = 0;
  bool converged = true;  // false when max_sweeps was hit
};

// Platt's SMO on the soft-margin dual with box constraints [0, C].
// Labels must be exactly +1/-1 with both classes present.
BinaryTrainResult train_svm_binary(const Matrix& x,
                                   const std::vector<int>& y,
                                   const KernelSpec& spec,
                                   const SmoOptions& opts = {});

double svm_decision(const BinarySvm& machine, const KernelSpec& spec,
                    double gamma, std::span<const double> x);

// One-vs-rest multi-class wrapper. In the 2-class scheme a single
// machine is trained with class 1 as positive; otherwise one machine
// per class. Prediction is the argmax decision value, ties to the
// lowest class index.
struct SvmModel {
  KernelSpec spec;
  double gamma = 0.0;  // resolved at fit time
  double C = 1.0;
  std::vector<BinarySvm> machines;
  int num_classes = 0;

  std::vector<double> decision_values(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
};

SvmModel train_svm(const Matrix& scaled_x, const std::vector<int>& y,
                   int num_classes, const KernelSpec& spec,
                   const SmoOptions& opts = {});

}  // namespace fakedet
