#include "fakedet/svm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "fakedet/errors.hpp"

namespace fakedet {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double poly_pow(double base, int degree) {
  double r = 1.0;
  for (int i = 0; i < degree; ++i) r *= base;
  return r;
}

}  // namespace

double resolve_gamma(const KernelSpec& spec, const Matrix& train_x) {
  if (spec.gamma) return *spec.gamma;
  if (train_x.empty()) throw TrainError("svm: empty training set");
  const double d = static_cast<double>(train_x[0].size());
  if (spec.type == KernelType::Polynomial) return 1.0 / d;
  // RBF: 1 / (d * mean feature variance), matching scaled inputs.
  const std::size_t cols = train_x[0].size();
  const double n = static_cast<double>(train_x.size());
  double mean_var = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double mean = 0.0;
    for (const auto& row : train_x) mean += row[j];
    mean /= n;
    double var = 0.0;
    for (const auto& row : train_x) var += (row[j] - mean) * (row[j] - mean);
    mean_var += var / n;
  }
  mean_var /= static_cast<double>(cols);
  if (mean_var <= 0.0) return 1.0 / d;
  return 1.0 / (d * mean_var);
}

double kernel_value(const KernelSpec& spec, double gamma,
                    std::span<const double> a, std::span<const double> b) {
  if (spec.type == KernelType::Polynomial) {
    return poly_pow(gamma * dot(a, b) + spec.coef0, spec.degree);
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d2 += diff * diff;
  }
  return std::exp(-gamma * d2);
}

namespace {

// Gram matrix access; precomputed when it fits comfortably in memory,
// otherwise entries are evaluated on demand.
class KernelMatrix {
 public:
  KernelMatrix(const Matrix& x, const KernelSpec& spec, double gamma)
      : x_(x), spec_(spec), gamma_(gamma), n_(x.size()) {
    if (n_ * n_ <= kMaxPrecomputed) {
      full_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i; j < n_; ++j) {
          const double v = kernel_value(spec_, gamma_, x_[i], x_[j]);
          if (!std::isfinite(v)) {
            throw TrainError("svm: non-finite kernel value at pair (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
          }
          full_[i * n_ + j] = v;
          full_[j * n_ + i] = v;
        }
      }
    }
  }

  double at(std::size_t i, std::size_t j) const {
    if (!full_.empty()) return full_[i * n_ + j];
    return kernel_value(spec_, gamma_, x_[i], x_[j]);
  }

 private:
  static constexpr std::size_t kMaxPrecomputed = 32ull * 1024 * 1024 / 2;
  const Matrix& x_;
  const KernelSpec& spec_;
  double gamma_;
  std::size_t n_;
  std::vector<double> full_;
};

// Dual objective W(alpha) = sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double dual_objective(const KernelMatrix& k, const std::vector<double>& alpha,
                      const std::vector<int>& y) {
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    linear += alpha[i];
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0.0) continue;
      quad += alpha[i] * alpha[j] * y[i] * y[j] * k.at(i, j);
    }
  }
  return linear - 0.5 * quad;
}

class SmoSolver {
 public:
  SmoSolver(const Matrix& x, const std::vector<int>& y, const KernelSpec& spec,
            double gamma, const SmoOptions& opts)
      : x_(x), y_(y), opts_(opts), kernel_(x, spec, gamma), n_(x.size()),
        alpha_(x.size(), 0.0), error_(x.size()) {
    // With alpha = 0 everywhere, f(x_i) = 0 and E_i = -y_i.
    for (std::size_t i = 0; i < n_; ++i) error_[i] = -static_cast<double>(y_[i]);
  }

  BinaryTrainResult solve() {
    bool examine_all = true;
    int clean_full_sweeps = 0;
    int sweeps = 0;
    bool converged = false;
    while (sweeps < opts_.max_sweeps) {
      int num_changed = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (examine_all || is_interior(alpha_[i])) {
          num_changed += examine_example(i);
        }
      }
      ++sweeps;
      if (examine_all) {
        if (num_changed == 0) {
          if (++clean_full_sweeps >= opts_.max_passes) {
            converged = true;
            break;
          }
        } else {
          clean_full_sweeps = 0;
          examine_all = false;
        }
      } else if (num_changed == 0) {
        examine_all = true;
      }
    }

    BinaryTrainResult result;
    result.alpha = alpha_;
    result.bias = bias_;
    result.objective_trace = std::move(trace_);
    result.sweeps = sweeps;
    result.converged = converged;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] > 0.0) {
        result.machine.support_vectors.push_back(x_[i]);
        result.machine.alpha_y.push_back(alpha_[i] * y_[i]);
      }
    }
    result.machine.bias = bias_;
    return result;
  }

 private:
  bool is_interior(double a) const { return a > 0.0 && a < opts_.C; }

  int examine_example(std::size_t i2) {
    const double y2 = y_[i2];
    const double e2 = error_[i2];
    const double r2 = e2 * y2;  // y*f - 1
    const bool violates = (r2 < -opts_.tol && alpha_[i2] < opts_.C) ||
                          (r2 > opts_.tol && alpha_[i2] > 0.0);
    if (!violates) return 0;

    // Second-choice heuristic: the interior point with the largest
    // |E1 - E2| (lowest index on ties, keeping training deterministic).
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_interior(alpha_[i])) continue;
      const double gap = std::fabs(error_[i] - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n_ && take_step(best, i2)) return 1;

    // Fallback scans start just past i2 rather than at a random point;
    // coverage is identical and runs stay reproducible.
    for (std::size_t offset = 1; offset < n_; ++offset) {
      const std::size_t i1 = (i2 + offset) % n_;
      if (is_interior(alpha_[i1]) && take_step(i1, i2)) return 1;
    }
    for (std::size_t offset = 1; offset < n_; ++offset) {
      const std::size_t i1 = (i2 + offset) % n_;
      if (!is_interior(alpha_[i1]) && take_step(i1, i2)) return 1;
    }
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double alph1 = alpha_[i1], alph2 = alpha_[i2];
    const double y1 = y_[i1], y2 = y_[i2];
    const double e1 = error_[i1], e2 = error_[i2];
    const double s = y1 * y2;
    const double C = opts_.C;

    double low, high;
    if (y1 != y2) {
      low = std::max(0.0, alph2 - alph1);
      high = std::min(C, C + alph2 - alph1);
    } else {
      low = std::max(0.0, alph1 + alph2 - C);
      high = std::min(C, alph1 + alph2);
    }
    if (low >= high) return false;

    const double k11 = kernel_.at(i1, i1);
    const double k12 = kernel_.at(i1, i2);
    const double k22 = kernel_.at(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;  // curvature along the pair

    double a2;
    if (eta > 0.0) {
      a2 = alph2 + y2 * (e1 - e2) / eta;
      a2 = std::clamp(a2, low, high);
    } else {
      // Flat or concave direction: pick the better endpoint by the
      // objective restricted to the pair. With f = sum(alpha*y*K) + b,
      // y*(E - b) recovers y*g - 1 for the endpoint formulas.
      const double f1 = y1 * (e1 - bias_) - alph1 * k11 - s * alph2 * k12;
      const double f2 = y2 * (e2 - bias_) - s * alph1 * k12 - alph2 * k22;
      const double l1 = alph1 + s * (alph2 - low);
      const double h1 = alph1 + s * (alph2 - high);
      const double obj_low = l1 * f1 + low * f2 + 0.5 * l1 * l1 * k11 +
                             0.5 * low * low * k22 + s * low * l1 * k12;
      const double obj_high = h1 * f1 + high * f2 + 0.5 * h1 * h1 * k11 +
                              0.5 * high * high * k22 + s * high * h1 * k12;
      if (obj_low < obj_high - 1e-12) {
        a2 = low;
      } else if (obj_low > obj_high + 1e-12) {
        a2 = high;
      } else {
        return false;
      }
    }

    if (std::fabs(a2 - alph2) < kStepEps * (a2 + alph2 + kStepEps)) return false;

    double a1 = alph1 + s * (alph2 - a2);
    if (a1 < 0.0) {
      a2 += s * a1;
      a1 = 0.0;
    } else if (a1 > C) {
      a2 += s * (a1 - C);
      a1 = C;
    }

    const double delta1 = (a1 - alph1) * y1;
    const double delta2 = (a2 - alph2) * y2;
    const double b1 = bias_ - e1 - delta1 * k11 - delta2 * k12;
    const double b2 = bias_ - e2 - delta1 * k12 - delta2 * k22;
    double new_bias;
    if (a1 > 0.0 && a1 < C) {
      new_bias = b1;
    } else if (a2 > 0.0 && a2 < C) {
      new_bias = b2;
    } else {
      new_bias = (b1 + b2) / 2.0;
    }
    const double delta_b = new_bias - bias_;

    for (std::size_t i = 0; i < n_; ++i) {
      error_[i] += delta1 * kernel_.at(i1, i) + delta2 * kernel_.at(i2, i) + delta_b;
    }
    alpha_[i1] = a1;
    alpha_[i2] = a2;
    bias_ = new_bias;

    if (opts_.track_objective) {
      const double obj = dual_objective(kernel_, alpha_, y_);
      assert(trace_.empty() || obj >= trace_.back() - 1e-9);
      trace_.push_back(obj);
    }
    return true;
  }

  static constexpr double kStepEps = 1e-12;

  const Matrix& x_;
  const std::vector<int>& y_;
  SmoOptions opts_;
  KernelMatrix kernel_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> error_;  // E_i = f(x_i) - y_i
  double bias_ = 0.0;
  std::vector<double> trace_;
};

}  // namespace

BinaryTrainResult train_svm_binary(const Matrix& x, const std::vector<int>& y,
                                   const KernelSpec& spec,
                                   const SmoOptions& opts) {
  if (x.empty()) throw TrainError("svm: empty training set");
  if (x.size() != y.size()) throw TrainError("svm: X/y size mismatch");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) {
      has_pos = true;
    } else if (label == -1) {
      has_neg = true;
    } else {
      throw TrainError("svm: binary labels must be +1/-1");
    }
  }
  if (!has_pos || !has_neg) {
    throw TrainError("svm: both classes must be present");
  }
  const double gamma = resolve_gamma(spec, x);
  SmoSolver solver(x, y, spec, gamma, opts);
  return solver.solve();
}

double svm_decision(const BinarySvm& machine, const KernelSpec& spec,
                    double gamma, std::span<const double> x) {
  double f = machine.bias;
  for (std::size_t i = 0; i < machine.support_vectors.size(); ++i) {
    f += machine.alpha_y[i] *
         kernel_value(spec, gamma, machine.support_vectors[i], x);
  }
  return f;
}

std::vector<double> SvmModel::decision_values(std::span<const double> x) const {
  std::vector<double> values;
  values.reserve(machines.size());
  for (const BinarySvm& m : machines) {
    values.push_back(svm_decision(m, spec, gamma, x));
  }
  return values;
}

int SvmModel::predict(std::span<const double> x) const {
  if (num_classes == 2) {
    return svm_decision(machines[0], spec, gamma, x) > 0.0 ? 1 : 0;
  }
  const std::vector<double> values = decision_values(x);
  int best = 0;
  for (std::size_t c = 1; c < values.size(); ++c) {
    if (values[c] > values[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(c);
    }
  }
  return best;
}

SvmModel train_svm(const Matrix& scaled_x, const std::vector<int>& y,
                   int num_classes, const KernelSpec& spec,
                   const SmoOptions& opts) {
  if (scaled_x.empty()) throw TrainError("svm: empty training set");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (int label : y) {
    if (label < 0 || label >= num_classes) throw TrainError("svm: label out of range");
    ++counts[static_cast<std::size_t>(label)];
  }
  for (int c = 0; c < num_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) {
      throw TrainError("svm: class " + std::to_string(c) +
                       " absent from training data");
    }
  }

  SvmModel model;
  model.spec = spec;
  model.gamma = resolve_gamma(spec, scaled_x);
  model.C = opts.C;
  model.num_classes = num_classes;
  KernelSpec resolved = spec;
  resolved.gamma = model.gamma;  // share one gamma across all machines

  std::vector<int> binary(y.size());
  auto train_one = [&](int positive_class) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      binary[i] = y[i] == positive_class ? 1 : -1;
    }
    model.machines.push_back(
        train_svm_binary(scaled_x, binary, resolved, opts).machine);
  };

  if (num_classes == 2) {
    train_one(1);
  } else {
    for (int c = 0; c < num_classes; ++c) train_one(c);
  }
  return model;
}

}  // namespace fakedet
