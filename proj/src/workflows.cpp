#include "fakedet/workflows.hpp"

#include <fstream>

#include <json.hpp>

#include "fakedet/dataset_io.hpp"
#include "fakedet/errors.hpp"
#include "fakedet/features.hpp"
#include "fakedet/stats.hpp"
#include "fakedet/synth.hpp"

namespace fakedet {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_run_json(const ordered_json& config,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << config.dump(2) << '\n';
}

// run.json lands inside directory outputs, or next to a file output as
// <file>.run.json.
std::filesystem::path run_json_for_file(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p += ".run.json";
  return p;
}

ordered_json hyper_to_json(const HyperParams& h) {
  ordered_json j;
  j["max_depth"] = h.max_depth ? ordered_json(*h.max_depth) : ordered_json(nullptr);
  j["min_samples_split"] = h.min_samples_split;
  j["n_trees"] = h.n_trees;
  j["features_per_split"] = h.features_per_split;
  j["k"] = h.k;
  j["svm_c"] = h.svm_c;
  j["svm_tol"] = h.svm_tol;
  j["svm_max_passes"] = h.svm_max_passes;
  j["svm_max_sweeps"] = h.svm_max_sweeps;
  j["poly_degree"] = h.poly_degree;
  j["gamma"] = h.gamma ? ordered_json(*h.gamma) : ordered_json(nullptr);
  return j;
}

}  // namespace

void run_synth(const SynthOptions& options) {
  const auto dataset =
      generate_dataset(default_profiles(), options.per_class, options.seed);
  std::filesystem::create_directories(options.out_dir);

  std::vector<AccountRecord> accounts;
  std::vector<std::pair<std::string, UserClass>> labels;
  accounts.reserve(dataset.size());
  labels.reserve(dataset.size());
  for (const LabeledAccount& la : dataset) {
    accounts.push_back(la.account);
    labels.emplace_back(la.account.account_id, la.label);
  }
  write_accounts_jsonl(accounts, options.out_dir / "accounts.jsonl");
  write_labels_csv(labels, options.out_dir / "labels.csv");

  ordered_json config;
  config["command"] = "synth";
  config["per_class"] = options.per_class;
  config["seed"] = options.seed;
  config["out"] = options.out_dir.string();
  write_run_json(config, options.out_dir / "run.json");
}

void run_extract(const ExtractOptions& options) {
  const std::vector<AccountRecord> accounts =
      load_accounts_jsonl(options.accounts_path);
  const auto labels = load_labels_csv(options.labels_path);
  const KeywordConfig keywords = options.keywords_path
                                     ? KeywordConfig::load(*options.keywords_path)
                                     : KeywordConfig::defaults();

  std::vector<LabeledExample> examples;
  examples.reserve(accounts.size());
  for (const AccountRecord& acc : accounts) {
    const auto it = labels.find(acc.account_id);
    if (it == labels.end()) {
      throw DataError("no label for account '" + acc.account_id + "' in " +
                      options.labels_path.string());
    }
    LabeledExample ex;
    ex.account_id = acc.account_id;
    ex.features = extract_features(acc, keywords);
    ex.label = it->second;
    examples.push_back(std::move(ex));
  }
  write_feature_csv(examples, options.out_csv);

  ordered_json config;
  config["command"] = "extract";
  config["accounts"] = options.accounts_path.string();
  config["labels"] = options.labels_path.string();
  config["keywords"] = options.keywords_path
                           ? ordered_json(options.keywords_path->string())
                           : ordered_json(nullptr);
  config["out"] = options.out_csv.string();
  write_run_json(config, run_json_for_file(options.out_csv));
}

void run_correlate(const CorrelateOptions& options) {
  const std::vector<LabeledExample> examples =
      load_feature_csv(options.features_path);
  const CorrelationMatrix matrix = correlation_matrix(examples);
  const std::vector<FeaturePair> top = top_pairs(matrix, options.top_k);
  const std::vector<ClassSummaryRow> summary = class_summary(examples);

  std::filesystem::create_directories(options.out_dir);
  write_correlation_csv(matrix, options.out_dir / "correlation.csv");
  write_correlation_markdown(matrix, top, options.out_dir / "correlation.md");
  write_top_pairs_csv(top, options.out_dir / "top_pairs.csv");
  write_class_summary_csv(summary, options.out_dir / "class_summary.csv");

  ordered_json config;
  config["command"] = "correlate";
  config["features"] = options.features_path.string();
  config["top_k"] = options.top_k;
  config["out"] = options.out_dir.string();
  write_run_json(config, options.out_dir / "run.json");
}

void run_train(const TrainOptions& options) {
  const std::vector<LabeledExample> examples =
      load_feature_csv(options.features_path);
  const TrainedPipeline pipeline = train_pipeline(
      examples, options.scheme, options.algo, options.hyper, options.seed);
  save_model(pipeline, options.out_model);

  ordered_json config;
  config["command"] = "train";
  config["features"] = options.features_path.string();
  config["scheme"] = scheme_token(options.scheme);
  config["algo"] = algo_token(options.algo);
  config["seed"] = options.seed;
  config["out"] = options.out_model.string();
  config["hyperparameters"] = hyper_to_json(options.hyper);
  write_run_json(config, run_json_for_file(options.out_model));
}

void run_predict(const PredictOptions& options) {
  const TrainedPipeline pipeline = load_model(options.model_path);
  const std::vector<LabeledExample> examples =
      load_feature_csv(options.features_path);

  std::ofstream out(options.out_csv, std::ios::binary);
  if (!out) throw DataError("cannot open " + options.out_csv.string() + " for writing");
  out << "account_id,truth,pred\n";
  for (const LabeledExample& ex : examples) {
    const int truth = scheme_label(ex.label, pipeline.scheme);
    const int predicted = pipeline.predict(ex.features);
    out << ex.account_id << ','
        << scheme_class_token(pipeline.scheme, truth) << ','
        << scheme_class_token(pipeline.scheme, predicted) << '\n';
  }
  if (!out) throw DataError("write failed for " + options.out_csv.string());

  ordered_json config;
  config["command"] = "predict";
  config["model"] = options.model_path.string();
  config["features"] = options.features_path.string();
  config["out"] = options.out_csv.string();
  write_run_json(config, run_json_for_file(options.out_csv));
}

void run_evaluate(const EvaluateOptions& options) {
  const std::vector<LabeledExample> examples =
      load_feature_csv(options.features_path);

  BenchmarkParams params;
  params.schemes = options.schemes;
  params.algos = options.algos;
  params.seed = options.seed;
  params.test_fraction = options.test_fraction;
  params.hyper = options.hyper;
  const BenchmarkReport report = benchmark_all(examples, params);

  write_benchmark_report(report, options.out_dir);
  write_timings(report, options.out_dir / "timings.txt");

  ordered_json config;
  config["command"] = "evaluate";
  config["features"] = options.features_path.string();
  ordered_json schemes = ordered_json::array();
  for (Scheme s : options.schemes) schemes.push_back(scheme_token(s));
  config["schemes"] = std::move(schemes);
  ordered_json algos = ordered_json::array();
  for (Algo a : options.algos) algos.push_back(algo_token(a));
  config["algos"] = std::move(algos);
  config["seed"] = options.seed;
  config["test_fraction"] = options.test_fraction;
  config["out"] = options.out_dir.string();
  config["hyperparameters"] = hyper_to_json(options.hyper);
  write_run_json(config, options.out_dir / "run.json");
}

}  // namespace fakedet
