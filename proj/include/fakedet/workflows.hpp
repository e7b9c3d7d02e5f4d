#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fakedet/evaluation.hpp"
#include "fakedet/pipeline.hpp"

namespace fakedet {

// File-level operations behind the CLI subcommands and the Python
// bindings. Each writes a run.json provenance echo of its resolved
// options (next to single-file outputs, inside directory outputs).

struct SynthOptions {
  int per_class = 700;
  std::uint64_t seed = 42;
  std::filesystem::path out_dir;
};
void run_synth(const SynthOptions& options);

struct ExtractOptions {
  std::filesystem::path accounts_path;
  std::filesystem::path labels_path;
  std::optional<std::filesystem::path> keywords_path;
  std::filesystem::path out_csv;
};
void run_extract(const ExtractOptions& options);

struct CorrelateOptions {
  std::filesystem::path features_path;
  std::filesystem::path out_dir;
  std::size_t top_k = 5;
};
void run_correlate(const CorrelateOptions& options);

struct TrainOptions {
  std::filesystem::path features_path;
  Scheme scheme = Scheme::TwoClass;
  Algo algo = Algo::RandomForest;
  std::uint64_t seed = 42;
  std::filesystem::path out_model;
  HyperParams hyper;
};
void run_train(const TrainOptions& options);

struct PredictOptions {
  std::filesystem::path model_path;
  std::filesystem::path features_path;
  std::filesystem::path out_csv;
};
void run_predict(const PredictOptions& options);

struct EvaluateOptions {
  std::filesystem::path features_path;
  std::vector<Scheme> schemes = {Scheme::TwoClass, Scheme::FourClass};
  std::vector<Algo> algos = {kAllAlgos.begin(), kAllAlgos.end()};
  std::uint64_t seed = 42;
  double test_fraction = 0.25;
  std::filesystem::path out_dir;
  HyperParams hyper;
};
void run_evaluate(const EvaluateOptions& options);

}  // namespace fakedet
