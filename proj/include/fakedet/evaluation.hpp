#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fakedet/metrics.hpp"
#include "fakedet/pipeline.hpp"
#include "fakedet/types.hpp"

namespace fakedet {

struct SplitResult {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

// Stratified hold-out on the example labels. Per class, the test side
// gets floor(count * test_fraction) examples (rounding favors train).
// Every class needs >= 2 examples.
SplitResult stratified_split(const std::vector<LabeledExample>& examples,
                             double test_fraction, std::uint64_t seed);

struct PredictionRow {
  std::string account_id;
  int truth = 0;
  int predicted = 0;
};

struct BenchmarkCell {
  Scheme scheme = Scheme::TwoClass;
  Algo algo = Algo::RandomForest;
  Metrics metrics;
  ConfusionMatrix confusion;
  std::vector<PredictionRow> predictions;
  std::vector<double> importance;  // random forest only, else empty
  double wall_seconds = 0.0;       // diagnostics; kept out of report files
};

struct BenchmarkReport {
  double test_fraction = 0.25;
  std::uint64_t seed = 42;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<BenchmarkCell> cells;  // scheme-major, algos in kAllAlgos order
};

struct BenchmarkParams {
  std::vector<Scheme> schemes = {Scheme::TwoClass, Scheme::FourClass};
  std::vector<Algo> algos = {kAllAlgos.begin(), kAllAlgos.end()};
  double test_fraction = 0.25;
  std::uint64_t seed = 42;
  HyperParams hyper;
};

// Splits once, then trains and scores every (scheme, algorithm) cell on
// the same hold-out. Deterministic in (examples, params).
BenchmarkReport benchmark_all(const std::vector<LabeledExample>& examples,
                              const BenchmarkParams& params);

struct CvStat {
  double mean = 0.0;
  double stddev = 0.0;  // population, over folds
};

struct CvResult {
  CvStat accuracy, macro_precision, macro_recall, macro_f1;
  std::vector<Metrics> folds;
};

// Stratified k-fold cross validation; every class needs >= k examples.
CvResult k_fold_cv(const std::vector<LabeledExample>& examples, int k,
                   Algo algo, Scheme scheme, const HyperParams& params,
                   std::uint64_t seed);

// Deterministic report emission (markdown / CSV / JSON plus confusion,
// prediction and importance files). Timings go to a separate file.
void write_benchmark_report(const BenchmarkReport& report,
                            const std::filesystem::path& out_dir);
void write_timings(const BenchmarkReport& report,
                   const std::filesystem::path& path);

}  // namespace fakedet
