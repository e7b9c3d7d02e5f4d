#include "fakedet/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

#include <json.hpp>

#include "fakedet/errors.hpp"
#include "fakedet/rng.hpp"

namespace fakedet {

namespace {

void fisher_yates(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

std::map<UserClass, std::vector<std::size_t>> indices_by_class(
    const std::vector<LabeledExample>& examples) {
  std::map<UserClass, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    groups[examples[i].label].push_back(i);
  }
  return groups;
}

}  // namespace

SplitResult stratified_split(const std::vector<LabeledExample>& examples,
                             double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DataError("stratified_split: test_fraction must be in (0, 1)");
  }
  auto groups = indices_by_class(examples);
  if (groups.empty()) throw DataError("stratified_split: empty dataset");

  Rng rng(derive_seed(seed, 0x591117));
  SplitResult split;
  for (auto& [cls, indices] : groups) {
    if (indices.size() < 2) {
      throw DataError("stratified_split: class '" +
                      std::string(class_token(cls)) +
                      "' has fewer than 2 examples");
    }
    fisher_yates(indices, rng);
    const std::size_t test_count = static_cast<std::size_t>(
        std::floor(static_cast<double>(indices.size()) * test_fraction));
    for (std::size_t i = 0; i < indices.size(); ++i) {
      (i < test_count ? split.test_indices : split.train_indices)
          .push_back(indices[i]);
    }
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  return split;
}

namespace {

std::vector<LabeledExample> take(const std::vector<LabeledExample>& examples,
                                 const std::vector<std::size_t>& indices) {
  std::vector<LabeledExample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(examples[i]);
  return out;
}

BenchmarkCell run_cell(const std::vector<LabeledExample>& train,
                       const std::vector<LabeledExample>& test, Scheme scheme,
                       Algo algo, const HyperParams& hyper,
                       std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();

  const TrainedPipeline pipeline = train_pipeline(train, scheme, algo, hyper, seed);

  BenchmarkCell cell;
  cell.scheme = scheme;
  cell.algo = algo;
  std::vector<int> truth, predicted;
  truth.reserve(test.size());
  predicted.reserve(test.size());
  for (const LabeledExample& ex : test) {
    const int t = scheme_label(ex.label, scheme);
    const int p = pipeline.predict(ex.features);
    truth.push_back(t);
    predicted.push_back(p);
    cell.predictions.push_back({ex.account_id, t, p});
  }
  cell.confusion = ConfusionMatrix::from_predictions(
      truth, predicted, num_scheme_classes(scheme));
  cell.metrics = compute_metrics(cell.confusion);
  if (algo == Algo::RandomForest) {
    cell.importance = feature_importance(std::get<RandomForestModel>(pipeline.model));
  }
  cell.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return cell;
}

std::uint64_t cell_seed(std::uint64_t base, Scheme scheme, Algo algo) {
  const std::uint64_t scheme_id = scheme == Scheme::TwoClass ? 2 : 4;
  std::uint64_t algo_id = 0;
  for (std::size_t i = 0; i < kAllAlgos.size(); ++i) {
    if (kAllAlgos[i] == algo) algo_id = i;
  }
  return derive_seed(base, scheme_id * 16 + algo_id);
}

}  // namespace

BenchmarkReport benchmark_all(const std::vector<LabeledExample>& examples,
                              const BenchmarkParams& params) {
  const SplitResult split =
      stratified_split(examples, params.test_fraction, params.seed);
  const std::vector<LabeledExample> train = take(examples, split.train_indices);
  const std::vector<LabeledExample> test = take(examples, split.test_indices);

  BenchmarkReport report;
  report.test_fraction = params.test_fraction;
  report.seed = params.seed;
  report.train_size = train.size();
  report.test_size = test.size();
  for (Scheme scheme : params.schemes) {
    for (Algo algo : params.algos) {
      report.cells.push_back(run_cell(train, test, scheme, algo, params.hyper,
                                      cell_seed(params.seed, scheme, algo)));
    }
  }
  return report;
}

CvResult k_fold_cv(const std::vector<LabeledExample>& examples, int k,
                   Algo algo, Scheme scheme, const HyperParams& params,
                   std::uint64_t seed) {
  if (k < 2) throw DataError("k_fold_cv: k must be >= 2");
  auto groups = indices_by_class(examples);
  Rng rng(derive_seed(seed, 0xf01d5));
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  for (auto& [cls, indices] : groups) {
    if (indices.size() < static_cast<std::size_t>(k)) {
      throw DataError("k_fold_cv: class '" + std::string(class_token(cls)) +
                      "' has " + std::to_string(indices.size()) +
                      " examples, fewer than k=" + std::to_string(k));
    }
    fisher_yates(indices, rng);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      folds[i % static_cast<std::size_t>(k)].push_back(indices[i]);
    }
  }

  CvResult result;
  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx, test_idx = folds[static_cast<std::size_t>(f)];
    for (int other = 0; other < k; ++other) {
      if (other == f) continue;
      const auto& fold = folds[static_cast<std::size_t>(other)];
      train_idx.insert(train_idx.end(), fold.begin(), fold.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    const std::vector<LabeledExample> train = take(examples, train_idx);
    const std::vector<LabeledExample> test = take(examples, test_idx);
    const TrainedPipeline pipeline = train_pipeline(
        train, scheme, algo, params, derive_seed(seed, static_cast<std::uint64_t>(f)));
    std::vector<int> truth, predicted;
    for (const LabeledExample& ex : test) {
      truth.push_back(scheme_label(ex.label, scheme));
      predicted.push_back(pipeline.predict(ex.features));
    }
    result.folds.push_back(compute_metrics(ConfusionMatrix::from_predictions(
        truth, predicted, num_scheme_classes(scheme))));
  }

  auto summarize = [&](auto getter) {
    CvStat stat;
    const double n = static_cast<double>(result.folds.size());
    for (const Metrics& m : result.folds) stat.mean += getter(m);
    stat.mean /= n;
    for (const Metrics& m : result.folds) {
      const double d = getter(m) - stat.mean;
      stat.stddev += d * d;
    }
    stat.stddev = std::sqrt(stat.stddev / n);
    return stat;
  };
  result.accuracy = summarize([](const Metrics& m) { return m.accuracy; });
  result.macro_precision = summarize([](const Metrics& m) { return m.macro_precision; });
  result.macro_recall = summarize([](const Metrics& m) { return m.macro_recall; });
  result.macro_f1 = summarize([](const Metrics& m) { return m.macro_f1; });
  return result;
}

namespace {

double percent2(double fraction) {
  return std::round(fraction * 10000.0) / 100.0;
}

std::string pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

std::string scheme_file_token(Scheme s) {
  return s == Scheme::TwoClass ? "2class" : "4class";
}

std::vector<Scheme> schemes_present(const BenchmarkReport& report) {
  std::vector<Scheme> schemes;
  for (const BenchmarkCell& cell : report.cells) {
    if (std::find(schemes.begin(), schemes.end(), cell.scheme) == schemes.end()) {
      schemes.push_back(cell.scheme);
    }
  }
  return schemes;
}

std::vector<Algo> algos_present(const BenchmarkReport& report) {
  std::vector<Algo> algos;
  for (Algo a : kAllAlgos) {
    for (const BenchmarkCell& cell : report.cells) {
      if (cell.algo == a) {
        algos.push_back(a);
        break;
      }
    }
  }
  return algos;
}

const BenchmarkCell* find_cell(const BenchmarkReport& report, Scheme s, Algo a) {
  for (const BenchmarkCell& cell : report.cells) {
    if (cell.scheme == s && cell.algo == a) return &cell;
  }
  return nullptr;
}

void write_report_markdown(const BenchmarkReport& report,
                           const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# Benchmark report\n\n";
  out << "Stratified hold-out: test fraction " << fmt6(report.test_fraction)
      << ", seed " << report.seed << ", " << report.train_size
      << " train / " << report.test_size << " test examples.\n\n";
  const auto schemes = schemes_present(report);
  out << "| # | Algorithm |";
  for (Scheme s : schemes) {
    out << ' ' << scheme_token(s) << "-class acc | prec | recall | F1 |";
  }
  out << "\n|---|-----------|";
  for (std::size_t i = 0; i < schemes.size(); ++i) out << "-----|------|--------|----|";
  out << '\n';
  int row = 1;
  for (Algo a : algos_present(report)) {
    out << "| " << row++ << " | " << algo_display_name(a) << " |";
    for (Scheme s : schemes) {
      const BenchmarkCell* cell = find_cell(report, s, a);
      if (cell == nullptr) {
        out << " - | - | - | - |";
        continue;
      }
      out << ' ' << pct(cell->metrics.accuracy) << " | "
          << pct(cell->metrics.macro_precision) << " | "
          << pct(cell->metrics.macro_recall) << " | "
          << pct(cell->metrics.macro_f1) << " |";
    }
    out << '\n';
  }
  out << "\nPrecision/recall/F1 are macro averages, in percent.\n";
}

void write_report_csv(const BenchmarkReport& report,
                      const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "scheme,algorithm,accuracy,macro_precision,macro_recall,macro_f1\n";
  for (const BenchmarkCell& cell : report.cells) {
    out << scheme_token(cell.scheme) << ',' << algo_token(cell.algo) << ','
        << pct(cell.metrics.accuracy) << ',' << pct(cell.metrics.macro_precision)
        << ',' << pct(cell.metrics.macro_recall) << ','
        << pct(cell.metrics.macro_f1) << '\n';
  }
}

void write_report_json(const BenchmarkReport& report,
                       const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["test_fraction"] = report.test_fraction;
  j["seed"] = report.seed;
  j["train_size"] = report.train_size;
  j["test_size"] = report.test_size;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const BenchmarkCell& cell : report.cells) {
    nlohmann::ordered_json c;
    c["scheme"] = scheme_token(cell.scheme);
    c["algorithm"] = algo_token(cell.algo);
    c["accuracy"] = percent2(cell.metrics.accuracy);
    c["macro_precision"] = percent2(cell.metrics.macro_precision);
    c["macro_recall"] = percent2(cell.metrics.macro_recall);
    c["macro_f1"] = percent2(cell.metrics.macro_f1);
    c["weighted_precision"] = percent2(cell.metrics.weighted_precision);
    c["weighted_recall"] = percent2(cell.metrics.weighted_recall);
    c["weighted_f1"] = percent2(cell.metrics.weighted_f1);
    c["per_class_precision"] = cell.metrics.precision;
    c["per_class_recall"] = cell.metrics.recall;
    c["per_class_f1"] = cell.metrics.f1;
    nlohmann::ordered_json cm = nlohmann::ordered_json::array();
    for (int t = 0; t < cell.confusion.num_classes; ++t) {
      nlohmann::ordered_json cm_row = nlohmann::ordered_json::array();
      for (int p = 0; p < cell.confusion.num_classes; ++p) {
        cm_row.push_back(cell.confusion.at(t, p));
      }
      cm.push_back(std::move(cm_row));
    }
    c["confusion"] = std::move(cm);
    cells.push_back(std::move(c));
  }
  j["results"] = std::move(cells);
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_cell_files(const BenchmarkCell& cell,
                      const std::filesystem::path& dir) {
  const std::string suffix = scheme_file_token(cell.scheme) + "_" +
                             std::string(algo_token(cell.algo));
  {
    std::ofstream out = open_out(dir / ("confusion_" + suffix + ".csv"));
    out << "truth\\pred";
    for (int p = 0; p < cell.confusion.num_classes; ++p) {
      out << ',' << scheme_class_token(cell.scheme, p);
    }
    out << '\n';
    for (int t = 0; t < cell.confusion.num_classes; ++t) {
      out << scheme_class_token(cell.scheme, t);
      for (int p = 0; p < cell.confusion.num_classes; ++p) {
        out << ',' << cell.confusion.at(t, p);
      }
      out << '\n';
    }
  }
  {
    std::ofstream out = open_out(dir / ("predictions_" + suffix + ".csv"));
    out << "account_id,truth,pred\n";
    for (const PredictionRow& row : cell.predictions) {
      out << row.account_id << ',' << scheme_class_token(cell.scheme, row.truth)
          << ',' << scheme_class_token(cell.scheme, row.predicted) << '\n';
    }
  }
  if (!cell.importance.empty()) {
    std::ofstream out = open_out(
        dir / ("importance_" + scheme_file_token(cell.scheme) + "_rf.csv"));
    out << "feature,importance\n";
    for (std::size_t i = 0; i < cell.importance.size(); ++i) {
      out << kFeatureNames[i] << ',' << fmt6(cell.importance[i]) << '\n';
    }
  }
}

}  // namespace

void write_benchmark_report(const BenchmarkReport& report,
                            const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_report_markdown(report, out_dir / "report.md");
  write_report_csv(report, out_dir / "report.csv");
  write_report_json(report, out_dir / "report.json");
  for (const BenchmarkCell& cell : report.cells) {
    write_cell_files(cell, out_dir);
  }
}

void write_timings(const BenchmarkReport& report,
                   const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "scheme,algorithm,seconds\n";
  for (const BenchmarkCell& cell : report.cells) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", cell.wall_seconds);
    out << scheme_token(cell.scheme) << ',' << algo_token(cell.algo) << ','
        << buf << '\n';
  }
}

}  // namespace fakedet
