#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fakedet/dataset_io.hpp"
#include "fakedet/errors.hpp"
#include "fakedet/features.hpp"
#include "fakedet/pipeline.hpp"
#include "fakedet/stats.hpp"
#include "fakedet/workflows.hpp"

namespace py = pybind11;

namespace {

fakedet::Scheme scheme_from_int(int scheme) {
  if (scheme == 2) return fakedet::Scheme::TwoClass;
  if (scheme == 4) return fakedet::Scheme::FourClass;
  throw fakedet::DataError("scheme must be 2 or 4");
}

fakedet::Algo algo_from_token(const std::string& token) {
  const auto algo = fakedet::parse_algo_token(token);
  if (!algo) throw fakedet::DataError("unknown algorithm '" + token + "'");
  return *algo;
}

fakedet::FeatureVector vector_from_row(const std::vector<double>& row) {
  if (row.size() != fakedet::FeatureVector::kCount) {
    throw fakedet::DataError("feature row must have 17 values");
  }
  std::array<double, fakedet::FeatureVector::kCount> a{};
  std::copy(row.begin(), row.end(), a.begin());
  return fakedet::FeatureVector::from_array(a);
}

// Thin Python-side handle around TrainedPipeline; predictions come back
// as class tokens.
class PyPipeline {
 public:
  explicit PyPipeline(fakedet::TrainedPipeline pipeline)
      : pipeline_(std::move(pipeline)) {}

  static PyPipeline train_csv(const std::filesystem::path& features_csv,
                              int scheme, const std::string& algo,
                              std::uint64_t seed) {
    const auto examples = fakedet::load_feature_csv(features_csv);
    return PyPipeline(fakedet::train_pipeline(examples, scheme_from_int(scheme),
                                              algo_from_token(algo), {}, seed));
  }

  static PyPipeline train(const std::vector<std::vector<double>>& rows,
                          const std::vector<std::string>& labels, int scheme,
                          const std::string& algo, std::uint64_t seed) {
    if (rows.size() != labels.size()) {
      throw fakedet::DataError("rows and labels must have equal length");
    }
    std::vector<fakedet::LabeledExample> examples;
    examples.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto label = fakedet::parse_class_token(labels[i]);
      if (!label) throw fakedet::DataError("unknown label '" + labels[i] + "'");
      fakedet::LabeledExample ex;
      ex.account_id = "row_" + std::to_string(i);
      ex.features = vector_from_row(rows[i]);
      ex.label = *label;
      examples.push_back(std::move(ex));
    }
    return PyPipeline(fakedet::train_pipeline(examples, scheme_from_int(scheme),
                                              algo_from_token(algo), {}, seed));
  }

  static PyPipeline load(const std::filesystem::path& path) {
    return PyPipeline(fakedet::load_model(path));
  }

  void save(const std::filesystem::path& path) const {
    fakedet::save_model(pipeline_, path);
  }

  std::string predict(const std::vector<double>& row) const {
    const int label = pipeline_.predict(vector_from_row(row));
    return std::string(fakedet::scheme_class_token(pipeline_.scheme, label));
  }

  std::vector<std::string> predict_batch(
      const std::vector<std::vector<double>>& rows) const {
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict(row));
    return out;
  }

  int scheme() const { return fakedet::num_scheme_classes(pipeline_.scheme); }
  std::string algorithm() const {
    return std::string(fakedet::algo_token(pipeline_.algo));
  }

 private:
  fakedet::TrainedPipeline pipeline_;
};

}  // namespace

PYBIND11_MODULE(_fakedet, m) {
  m.doc() = "Fake-account detection: feature extraction, correlation "
            "analysis and from-scratch classifiers";

  py::register_exception<fakedet::DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<fakedet::TrainError>(m, "TrainError", PyExc_RuntimeError);

  m.def("feature_names", [] {
    std::vector<std::string> names;
    for (auto n : fakedet::kFeatureNames) names.emplace_back(n);
    return names;
  });

  m.def("pearson", &fakedet::pearson, py::arg("x"), py::arg("y"),
        "Pearson correlation of two equal-length series");

  m.def(
      "extract_features",
      [](const std::string& account_json) {
        const fakedet::AccountRecord account =
            fakedet::parse_account_json(account_json);
        const auto values = fakedet::extract_features(account).to_array();
        return std::vector<double>(values.begin(), values.end());
      },
      py::arg("account_json"),
      "17 features for one account given as a JSON object string");

  m.def(
      "synth",
      [](int per_class, std::uint64_t seed, const std::filesystem::path& out_dir) {
        fakedet::run_synth({per_class, seed, out_dir});
      },
      py::arg("per_class"), py::arg("seed"), py::arg("out_dir"),
      "Write accounts.jsonl + labels.csv for a synthetic dataset");

  m.def(
      "extract",
      [](const std::filesystem::path& accounts, const std::filesystem::path& labels,
         const std::filesystem::path& out_csv, const std::string& keywords) {
        fakedet::ExtractOptions options;
        options.accounts_path = accounts;
        options.labels_path = labels;
        if (!keywords.empty()) options.keywords_path = keywords;
        options.out_csv = out_csv;
        fakedet::run_extract(options);
      },
      py::arg("accounts"), py::arg("labels"), py::arg("out_csv"),
      py::arg("keywords") = "",
      "Extract the feature CSV from accounts + labels files");

  m.def(
      "correlate",
      [](const std::filesystem::path& features, const std::filesystem::path& out_dir,
         std::size_t top_k) {
        fakedet::run_correlate({features, out_dir, top_k});
      },
      py::arg("features"), py::arg("out_dir"), py::arg("top_k") = 5,
      "Correlation matrix, top pairs and class summaries");

  m.def(
      "evaluate",
      [](const std::filesystem::path& features, const std::filesystem::path& out_dir,
         const std::string& schemes, const std::string& algos, std::uint64_t seed,
         double test_fraction) {
        fakedet::EvaluateOptions options;
        options.features_path = features;
        options.out_dir = out_dir;
        options.seed = seed;
        options.test_fraction = test_fraction;
        options.schemes.clear();
        if (schemes.find('2') != std::string::npos) {
          options.schemes.push_back(fakedet::Scheme::TwoClass);
        }
        if (schemes.find('4') != std::string::npos) {
          options.schemes.push_back(fakedet::Scheme::FourClass);
        }
        if (options.schemes.empty()) {
          throw fakedet::DataError("schemes must mention 2 and/or 4");
        }
        if (algos != "all") {
          options.algos.clear();
          std::size_t start = 0;
          while (start <= algos.size()) {
            const std::size_t comma = algos.find(',', start);
            const std::string token =
                algos.substr(start, comma == std::string::npos ? std::string::npos
                                                               : comma - start);
            if (!token.empty()) options.algos.push_back(algo_from_token(token));
            if (comma == std::string::npos) break;
            start = comma + 1;
          }
          if (options.algos.empty()) {
            throw fakedet::DataError("algos must name at least one algorithm");
          }
        }
        fakedet::run_evaluate(options);
      },
      py::arg("features"), py::arg("out_dir"), py::arg("schemes") = "2,4",
      py::arg("algos") = "all", py::arg("seed") = 42,
      py::arg("test_fraction") = 0.25,
      "Benchmark the model families and write the report files");

  py::class_<PyPipeline>(m, "Pipeline")
      .def_static("train_csv", &PyPipeline::train_csv, py::arg("features_csv"),
                  py::arg("scheme"), py::arg("algo"), py::arg("seed") = 42)
      .def_static("train", &PyPipeline::train, py::arg("rows"), py::arg("labels"),
                  py::arg("scheme"), py::arg("algo"), py::arg("seed") = 42)
      .def_static("load", &PyPipeline::load, py::arg("path"))
      .def("save", &PyPipeline::save, py::arg("path"))
      .def("predict", &PyPipeline::predict, py::arg("row"))
      .def("predict_batch", &PyPipeline::predict_batch, py::arg("rows"))
      .def_property_readonly("scheme", &PyPipeline::scheme)
      .def_property_readonly("algorithm", &PyPipeline::algorithm);
}
