#include "fakedet/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "fakedet/errors.hpp"
#include "fakedet/matrix.hpp"

namespace fakedet {

namespace {

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "fakedet-pipeline";

using json = nlohmann::json;

}  // namespace

std::string_view algo_token(Algo algo) {
  switch (algo) {
    case Algo::RandomForest: return "rf";
    case Algo::Knn: return "knn";
    case Algo::SvmPoly: return "svm-poly";
    case Algo::SvmRbf: return "svm-rbf";
    case Algo::DecisionTree: return "dt";
  }
  return "?";
}

std::optional<Algo> parse_algo_token(std::string_view token) {
  for (Algo a : kAllAlgos) {
    if (token == algo_token(a)) return a;
  }
  return std::nullopt;
}

std::string_view algo_display_name(Algo algo) {
  switch (algo) {
    case Algo::RandomForest: return "Random forest";
    case Algo::Knn: return "KNN";
    case Algo::SvmPoly: return "SVM (polynomial)";
    case Algo::SvmRbf: return "SVM (RBF)";
    case Algo::DecisionTree: return "Decision tree";
  }
  return "?";
}

namespace {

bool needs_scaling(Algo algo) {
  return algo == Algo::Knn || algo == Algo::SvmPoly || algo == Algo::SvmRbf;
}

}  // namespace

int TrainedPipeline::predict(const FeatureVector& features) const {
  const auto raw = features.to_array();
  std::vector<double> row(raw.begin(), raw.end());
  if (scaler) row = scaler->transform_row(row);
  return std::visit([&](const auto& m) { return m.predict(row); }, model);
}

std::vector<int> TrainedPipeline::predict(
    const std::vector<FeatureVector>& features) const {
  std::vector<int> out;
  out.reserve(features.size());
  for (const FeatureVector& f : features) out.push_back(predict(f));
  return out;
}

TrainedPipeline train_pipeline(const std::vector<LabeledExample>& train,
                               Scheme scheme, Algo algo,
                               const HyperParams& params,
                               std::uint64_t seed) {
  if (train.empty()) throw TrainError("train_pipeline: empty training set");

  TrainedPipeline pipeline;
  pipeline.scheme = scheme;
  pipeline.algo = algo;

  Matrix x = feature_matrix(train);
  const std::vector<int> y = scheme_labels(train, scheme);
  const int classes = num_scheme_classes(scheme);

  if (needs_scaling(algo)) {
    pipeline.scaler = StandardScaler::fit(x);
    x = pipeline.scaler->transform(x);
  }

  switch (algo) {
    case Algo::RandomForest: {
      ForestParams fp;
      fp.n_trees = params.n_trees;
      fp.features_per_split = params.features_per_split;
      fp.tree.max_depth = params.max_depth;
      fp.tree.min_samples_split = params.min_samples_split;
      pipeline.model = train_random_forest(x, y, classes, fp, seed);
      break;
    }
    case Algo::DecisionTree: {
      TreeParams tp;
      tp.max_depth = params.max_depth;
      tp.min_samples_split = params.min_samples_split;
      pipeline.model = train_decision_tree(x, y, classes, tp);
      break;
    }
    case Algo::Knn:
      pipeline.model = train_knn(std::move(x), y, classes, params.k);
      break;
    case Algo::SvmPoly:
    case Algo::SvmRbf: {
      KernelSpec spec;
      spec.type = algo == Algo::SvmPoly ? KernelType::Polynomial : KernelType::Rbf;
      spec.degree = params.poly_degree;
      spec.gamma = params.gamma;
      SmoOptions opts;
      opts.C = params.svm_c;
      opts.tol = params.svm_tol;
      opts.max_passes = params.svm_max_passes;
      opts.max_sweeps = params.svm_max_sweeps;
      pipeline.model = train_svm(x, y, classes, spec, opts);
      break;
    }
  }
  return pipeline;
}

namespace {

json scaler_to_json(const StandardScaler& s) {
  return json{{"mean", s.mean}, {"std", s.stddev}};
}

StandardScaler scaler_from_json(const json& j) {
  StandardScaler s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.stddev = j.at("std").get<std::vector<double>>();
  return s;
}

json tree_to_json(const DecisionTreeModel& t) {
  json nodes = json::array();
  for (const TreeNode& n : t.nodes) {
    nodes.push_back({{"f", n.feature},
                     {"t", n.threshold},
                     {"l", n.left},
                     {"r", n.right},
                     {"c", n.leaf_class}});
  }
  return json{{"nodes", std::move(nodes)},
              {"num_classes", t.num_classes},
              {"num_features", t.num_features},
              {"gini_importance", t.gini_importance}};
}

DecisionTreeModel tree_from_json(const json& j) {
  DecisionTreeModel t;
  t.num_classes = j.at("num_classes").get<int>();
  t.num_features = j.at("num_features").get<int>();
  t.gini_importance = j.at("gini_importance").get<std::vector<double>>();
  for (const json& n : j.at("nodes")) {
    TreeNode node;
    node.feature = n.at("f").get<int>();
    node.threshold = n.at("t").get<double>();
    node.left = n.at("l").get<int>();
    node.right = n.at("r").get<int>();
    node.leaf_class = n.at("c").get<int>();
    t.nodes.push_back(node);
  }
  if (t.nodes.empty()) throw DataError("model file: tree has no nodes");
  return t;
}

json forest_to_json(const RandomForestModel& f) {
  json trees = json::array();
  for (const DecisionTreeModel& t : f.trees) trees.push_back(tree_to_json(t));
  return json{{"trees", std::move(trees)},
              {"num_classes", f.num_classes},
              {"num_features", f.num_features}};
}

RandomForestModel forest_from_json(const json& j) {
  RandomForestModel f;
  f.num_classes = j.at("num_classes").get<int>();
  f.num_features = j.at("num_features").get<int>();
  for (const json& t : j.at("trees")) f.trees.push_back(tree_from_json(t));
  if (f.trees.empty()) throw DataError("model file: forest has no trees");
  return f;
}

json knn_to_json(const KnnModel& m) {
  return json{{"X", m.train_x},
              {"y", m.train_y},
              {"k", m.k},
              {"num_classes", m.num_classes}};
}

KnnModel knn_from_json(const json& j) {
  KnnModel m;
  m.train_x = j.at("X").get<Matrix>();
  m.train_y = j.at("y").get<std::vector<int>>();
  m.k = j.at("k").get<int>();
  m.num_classes = j.at("num_classes").get<int>();
  return m;
}

json svm_to_json(const SvmModel& m) {
  json machines = json::array();
  for (const BinarySvm& b : m.machines) {
    machines.push_back({{"sv", b.support_vectors},
                        {"alpha_y", b.alpha_y},
                        {"bias", b.bias}});
  }
  return json{{"kernel", m.spec.type == KernelType::Polynomial ? "poly" : "rbf"},
              {"degree", m.spec.degree},
              {"gamma", m.gamma},
              {"coef0", m.spec.coef0},
              {"C", m.C},
              {"num_classes", m.num_classes},
              {"machines", std::move(machines)}};
}

SvmModel svm_from_json(const json& j) {
  SvmModel m;
  const std::string kernel = j.at("kernel").get<std::string>();
  if (kernel == "poly") {
    m.spec.type = KernelType::Polynomial;
  } else if (kernel == "rbf") {
    m.spec.type = KernelType::Rbf;
  } else {
    throw DataError("model file: unknown kernel '" + kernel + "'");
  }
  m.spec.degree = j.at("degree").get<int>();
  m.gamma = j.at("gamma").get<double>();
  m.spec.gamma = m.gamma;
  m.spec.coef0 = j.at("coef0").get<double>();
  m.C = j.at("C").get<double>();
  m.num_classes = j.at("num_classes").get<int>();
  for (const json& b : j.at("machines")) {
    BinarySvm machine;
    machine.support_vectors = b.at("sv").get<Matrix>();
    machine.alpha_y = b.at("alpha_y").get<std::vector<double>>();
    machine.bias = b.at("bias").get<double>();
    m.machines.push_back(std::move(machine));
  }
  if (m.machines.empty()) throw DataError("model file: svm has no machines");
  return m;
}

}  // namespace

void save_model(const TrainedPipeline& pipeline,
                const std::filesystem::path& path) {
  json j;
  j["format"] = kFormatName;
  j["version"] = kFormatVersion;
  j["scheme"] = pipeline.scheme == Scheme::TwoClass ? "two_class" : "four_class";
  j["algorithm"] = algo_token(pipeline.algo);
  j["scaler"] = pipeline.scaler ? scaler_to_json(*pipeline.scaler) : json(nullptr);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RandomForestModel>) {
          j["model"] = forest_to_json(m);
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          j["model"] = knn_to_json(m);
        } else if constexpr (std::is_same_v<T, SvmModel>) {
          j["model"] = svm_to_json(m);
        } else {
          j["model"] = tree_to_json(m);
        }
      },
      pipeline.model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << j.dump();
  out << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

TrainedPipeline load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string() + " for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": corrupt model file: " + e.what());
  }
  try {
    if (!j.contains("format") || j.at("format").get<std::string>() != kFormatName) {
      throw DataError(path.string() + ": not a " + kFormatName + " file");
    }
    const int version = j.at("version").get<int>();
    if (version != kFormatVersion) {
      throw DataError(path.string() + ": unsupported version " +
                      std::to_string(version) + " (expected " +
                      std::to_string(kFormatVersion) + ")");
    }
    TrainedPipeline pipeline;
    const std::string scheme = j.at("scheme").get<std::string>();
    if (scheme == "two_class") {
      pipeline.scheme = Scheme::TwoClass;
    } else if (scheme == "four_class") {
      pipeline.scheme = Scheme::FourClass;
    } else {
      throw DataError(path.string() + ": unknown scheme '" + scheme + "'");
    }
    const std::string algo = j.at("algorithm").get<std::string>();
    const auto parsed = parse_algo_token(algo);
    if (!parsed) throw DataError(path.string() + ": unknown algorithm '" + algo + "'");
    pipeline.algo = *parsed;
    if (!j.at("scaler").is_null()) {
      pipeline.scaler = scaler_from_json(j.at("scaler"));
    }
    const json& model = j.at("model");
    switch (*parsed) {
      case Algo::RandomForest: pipeline.model = forest_from_json(model); break;
      case Algo::Knn: pipeline.model = knn_from_json(model); break;
      case Algo::SvmPoly:
      case Algo::SvmRbf: pipeline.model = svm_from_json(model); break;
      case Algo::DecisionTree: pipeline.model = tree_from_json(model); break;
    }
    return pipeline;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": corrupt model file: " + e.what());
  }
}

}  // namespace fakedet
