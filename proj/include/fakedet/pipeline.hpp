#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fakedet/knn.hpp"
#include "fakedet/random_forest.hpp"
#include "fakedet/scaler.hpp"
#include "fakedet/svm.hpp"
#include "fakedet/types.hpp"

namespace fakedet {

enum class Algo { RandomForest, Knn, SvmPoly, SvmRbf, DecisionTree };

// Canonical report row order.
inline constexpr std::array<Algo, 5> kAllAlgos = {
    Algo::RandomForest, Algo::Knn, Algo::SvmPoly, Algo::SvmRbf,
    Algo::DecisionTree};

std::string_view algo_token(Algo algo);  // rf, knn, svm-poly, svm-rbf, dt
std::optional<Algo> parse_algo_token(std::string_view token);
std::string_view algo_display_name(Algo algo);

// Every knob in one bag; each model family reads only its own fields.
struct HyperParams {
  // trees
  std::optional<int> max_depth;
  int min_samples_split = 2;
  // forest
  int n_trees = 100;
  int features_per_split = 0;  // 0 = floor(sqrt(d))
  // knn
  int k = 5;
  // svm
  double svm_c = 1.0;
  double svm_tol = 1e-3;
  int svm_max_passes = 1;
  int svm_max_sweeps = 500;
  int poly_degree = 3;
  std::optional<double> gamma;
};

// Fitted scaler (tree models skip scaling) + fitted model + scheme.
struct TrainedPipeline {
  Scheme scheme = Scheme::TwoClass;
  Algo algo = Algo::RandomForest;
  std::optional<StandardScaler> scaler;
  std::variant<RandomForestModel, KnnModel, SvmModel, DecisionTreeModel> model;

  int predict(const FeatureVector& features) const;
  std::vector<int> predict(const std::vector<FeatureVector>& features) const;
};

TrainedPipeline train_pipeline(const std::vector<LabeledExample>& train,
                               Scheme scheme, Algo algo,
                               const HyperParams& params, std::uint64_t seed);

// Versioned JSON container; round-trips bit-identical parameters.
void save_model(const TrainedPipeline& pipeline,
                const std::filesystem::path& path);
TrainedPipeline load_model(const std::filesystem::path& path);

}  // namespace fakedet
