// Command-line front end: synth, extract, correlate, train, predict,
// evaluate. Exit codes: 0 ok, 1 usage, 2 data/schema error, 3 training
// failure. Diagnostics go to stderr; data only to files.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fakedet/errors.hpp"
#include "fakedet/workflows.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitTrain = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fakedet::Scheme parse_scheme(const std::string& token) {
  if (token == "2") return fakedet::Scheme::TwoClass;
  if (token == "4") return fakedet::Scheme::FourClass;
  throw UsageError("unknown scheme '" + token + "' (expected 2 or 4)");
}

fakedet::Algo parse_algo(const std::string& token) {
  const auto algo = fakedet::parse_algo_token(token);
  if (!algo) {
    throw UsageError("unknown algorithm '" + token +
                     "' (expected rf, knn, svm-poly, svm-rbf or dt)");
  }
  return *algo;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<fakedet::Scheme> parse_schemes(const std::string& csv) {
  std::vector<fakedet::Scheme> schemes;
  for (const std::string& token : split_list(csv)) {
    const fakedet::Scheme s = parse_scheme(token);
    if (std::find(schemes.begin(), schemes.end(), s) == schemes.end()) {
      schemes.push_back(s);
    }
  }
  if (schemes.empty()) throw UsageError("--schemes must name at least one of 2,4");
  return schemes;
}

std::vector<fakedet::Algo> parse_algos(const std::string& csv) {
  if (csv == "all") return {fakedet::kAllAlgos.begin(), fakedet::kAllAlgos.end()};
  std::vector<fakedet::Algo> algos;
  for (const std::string& token : split_list(csv)) {
    const fakedet::Algo a = parse_algo(token);
    if (std::find(algos.begin(), algos.end(), a) == algos.end()) {
      algos.push_back(a);
    }
  }
  if (algos.empty()) throw UsageError("--algos must name at least one algorithm");
  return algos;
}

// Hyperparameter flags shared by train and evaluate.
struct HyperFlags {
  int max_depth = -1;  // -1 = unlimited
  int min_samples_split = 2;
  int n_trees = 100;
  int features_per_split = 0;
  int k = 5;
  double svm_c = 1.0;
  double svm_tol = 1e-3;
  int svm_max_passes = 1;
  int svm_max_sweeps = 500;
  int poly_degree = 3;
  double gamma = 0.0;  // 0 = data-derived default

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-depth", max_depth, "Tree depth cap (-1 = unlimited)");
    cmd->add_option("--min-samples-split", min_samples_split,
                    "Minimum node size eligible for a split");
    cmd->add_option("--trees", n_trees, "Number of forest trees");
    cmd->add_option("--features-per-split", features_per_split,
                    "Random features per split (0 = floor(sqrt(d)))");
    cmd->add_option("--k", k, "Neighbors for KNN");
    cmd->add_option("--c", svm_c, "SVM regularization C");
    cmd->add_option("--tol", svm_tol, "SVM KKT tolerance");
    cmd->add_option("--max-passes", svm_max_passes,
                    "Violation-free full sweeps required to stop SMO");
    cmd->add_option("--max-sweeps", svm_max_sweeps, "Hard cap on SMO sweeps");
    cmd->add_option("--degree", poly_degree, "Polynomial kernel degree");
    cmd->add_option("--gamma", gamma, "Kernel gamma (0 = data-derived)");
  }

  fakedet::HyperParams resolve() const {
    fakedet::HyperParams h;
    if (max_depth >= 0) h.max_depth = max_depth;
    h.min_samples_split = min_samples_split;
    h.n_trees = n_trees;
    h.features_per_split = features_per_split;
    h.k = k;
    h.svm_c = svm_c;
    h.svm_tol = svm_tol;
    h.svm_max_passes = svm_max_passes;
    h.svm_max_sweeps = svm_max_sweeps;
    h.poly_degree = poly_degree;
    if (gamma > 0.0) h.gamma = gamma;
    return h;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fake-account detection pipeline"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic dataset");
  int per_class = 700;
  std::uint64_t synth_seed = 42;
  std::string synth_out;
  synth->add_option("--per-class", per_class, "Accounts per class")
      ->capture_default_str();
  synth->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")->required();

  // extract
  auto* extract = app.add_subcommand("extract", "Extract features from accounts");
  std::string accounts_path, labels_path, keywords_path, extract_out;
  extract->add_option("--accounts", accounts_path, "Accounts JSONL")->required();
  extract->add_option("--labels", labels_path, "Labels CSV")->required();
  extract->add_option("--keywords", keywords_path, "Keyword config JSON");
  extract->add_option("--out", extract_out, "Output feature CSV")->required();

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Correlation and class summaries");
  std::string corr_features, corr_out;
  std::size_t top_k = 5;
  correlate->add_option("--features", corr_features, "Feature CSV")->required();
  correlate->add_option("--top-k", top_k, "Top pairs to report")->capture_default_str();
  correlate->add_option("--out", corr_out, "Output directory")->required();

  // train
  auto* train = app.add_subcommand("train", "Train a classifier pipeline");
  std::string train_features, train_scheme = "2", train_algo = "rf", train_out;
  std::uint64_t train_seed = 42;
  HyperFlags train_hyper;
  train->add_option("--features", train_features, "Feature CSV")->required();
  train->add_option("--scheme", train_scheme, "2 or 4")->capture_default_str();
  train->add_option("--algo", train_algo, "rf|knn|svm-poly|svm-rbf|dt")
      ->capture_default_str();
  train->add_option("--seed", train_seed, "RNG seed")->capture_default_str();
  train->add_option("--out", train_out, "Output model file")->required();
  train_hyper.attach(train);

  // predict
  auto* predict = app.add_subcommand("predict", "Predict with a trained model");
  std::string model_path, pred_features, pred_out;
  predict->add_option("--model", model_path, "Model file")->required();
  predict->add_option("--features", pred_features, "Feature CSV")->required();
  predict->add_option("--out", pred_out, "Output predictions CSV")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Benchmark all models");
  std::string eval_features, eval_schemes = "2,4", eval_algos = "all", eval_out;
  std::uint64_t eval_seed = 42;
  double test_fraction = 0.25;
  HyperFlags eval_hyper;
  evaluate->add_option("--features", eval_features, "Feature CSV")->required();
  evaluate->add_option("--schemes", eval_schemes, "Comma list of 2,4")
      ->capture_default_str();
  evaluate->add_option("--algos", eval_algos, "all or comma list")
      ->capture_default_str();
  evaluate->add_option("--seed", eval_seed, "RNG seed")->capture_default_str();
  evaluate->add_option("--test-fraction", test_fraction, "Hold-out fraction")
      ->capture_default_str();
  evaluate->add_option("--out", eval_out, "Output directory")->required();
  eval_hyper.attach(evaluate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      fakedet::SynthOptions options;
      options.per_class = per_class;
      options.seed = synth_seed;
      options.out_dir = synth_out;
      if (per_class < 1) throw fakedet::DataError("--per-class must be >= 1");
      fakedet::run_synth(options);
    } else if (extract->parsed()) {
      fakedet::ExtractOptions options;
      options.accounts_path = accounts_path;
      options.labels_path = labels_path;
      if (!keywords_path.empty()) options.keywords_path = keywords_path;
      options.out_csv = extract_out;
      fakedet::run_extract(options);
    } else if (correlate->parsed()) {
      fakedet::CorrelateOptions options;
      options.features_path = corr_features;
      options.out_dir = corr_out;
      options.top_k = top_k;
      fakedet::run_correlate(options);
    } else if (train->parsed()) {
      fakedet::TrainOptions options;
      options.features_path = train_features;
      options.scheme = parse_scheme(train_scheme);
      options.algo = parse_algo(train_algo);
      options.seed = train_seed;
      options.out_model = train_out;
      options.hyper = train_hyper.resolve();
      fakedet::run_train(options);
    } else if (predict->parsed()) {
      fakedet::PredictOptions options;
      options.model_path = model_path;
      options.features_path = pred_features;
      options.out_csv = pred_out;
      fakedet::run_predict(options);
    } else if (evaluate->parsed()) {
      fakedet::EvaluateOptions options;
      options.features_path = eval_features;
      options.schemes = parse_schemes(eval_schemes);
      options.algos = parse_algos(eval_algos);
      options.seed = eval_seed;
      options.test_fraction = test_fraction;
      options.out_dir = eval_out;
      options.hyper = eval_hyper.resolve();
      fakedet::run_evaluate(options);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fakedet::TrainError& e) {
    std::cerr << "training error: " << e.what() << '\n';
    return kExitTrain;
  } catch (const fakedet::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
