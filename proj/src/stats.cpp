#include "fakedet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "fakedet/errors.hpp"

namespace fakedet {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw DataError("pearson: series lengths differ (" +
                    std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw DataError("pearson: need at least 2 observations");
  const double n = static_cast<double>(x.size());
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;  // constant series
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const std::vector<LabeledExample>& examples) {
  if (examples.size() < 2) {
    throw DataError("correlation_matrix: need at least 2 examples");
  }
  constexpr std::size_t d = FeatureVector::kCount;
  std::array<std::vector<double>, d> columns;
  for (auto& col : columns) col.reserve(examples.size());
  for (const LabeledExample& ex : examples) {
    const auto row = ex.features.to_array();
    for (std::size_t j = 0; j < d; ++j) columns[j].push_back(row[j]);
  }
  CorrelationMatrix m;
  for (std::size_t i = 0; i < d; ++i) {
    m.r[i][i] = 1.0;
    for (std::size_t j = i + 1; j < d; ++j) {
      const double r = pearson(columns[i], columns[j]);
      m.r[i][j] = r;
      m.r[j][i] = r;
    }
  }
  return m;
}

std::vector<FeaturePair> top_pairs(const CorrelationMatrix& matrix,
                                   std::size_t k) {
  std::vector<FeaturePair> pairs;
  constexpr std::size_t d = FeatureVector::kCount;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      pairs.push_back({i, j, matrix.r[i][j]});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const FeaturePair& a, const FeaturePair& b) {
              const double am = std::fabs(a.r), bm = std::fabs(b.r);
              if (am != bm) return am > bm;
              if (a.a != b.a) return a.a < b.a;
              return a.b < b.b;
            });
  if (pairs.size() > k) pairs.resize(k);
  return pairs;
}

namespace {

FeatureStats column_stats(std::vector<double>& values) {
  FeatureStats s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / n);
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1
                 ? values[mid]
                 : (values[mid - 1] + values[mid]) / 2.0;
  return s;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::vector<ClassSummaryRow> class_summary(
    const std::vector<LabeledExample>& examples) {
  if (examples.empty()) throw DataError("class_summary: empty dataset");
  std::map<UserClass, std::array<std::vector<double>, FeatureVector::kCount>>
      by_class;
  for (const LabeledExample& ex : examples) {
    auto& cols = by_class[ex.label];
    const auto row = ex.features.to_array();
    for (std::size_t j = 0; j < FeatureVector::kCount; ++j) {
      cols[j].push_back(row[j]);
    }
  }
  std::vector<ClassSummaryRow> rows;
  for (auto& [cls, cols] : by_class) {
    ClassSummaryRow row;
    row.cls = cls;
    for (std::size_t j = 0; j < FeatureVector::kCount; ++j) {
      row.stats[j] = column_stats(cols[j]);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_correlation_csv(const CorrelationMatrix& matrix,
                           const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "feature";
  for (auto name : kFeatureNames) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < FeatureVector::kCount; ++i) {
    out << kFeatureNames[i];
    for (std::size_t j = 0; j < FeatureVector::kCount; ++j) {
      out << ',' << fmt6(matrix.r[i][j]);
    }
    out << '\n';
  }
}

void write_correlation_markdown(const CorrelationMatrix& matrix,
                                const std::vector<FeaturePair>& top,
                                const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# Feature correlation (Pearson r)\n\n";
  out << "|      |";
  for (auto name : kFeatureNames) out << ' ' << name << " |";
  out << "\n|------|";
  for (std::size_t j = 0; j < FeatureVector::kCount; ++j) out << "------|";
  out << '\n';
  for (std::size_t i = 0; i < FeatureVector::kCount; ++i) {
    out << "| " << kFeatureNames[i] << " |";
    for (std::size_t j = 0; j < FeatureVector::kCount; ++j) {
      out << ' ' << fmt3(matrix.r[i][j]) << " |";
    }
    out << '\n';
  }
  out << "\n## Strongest off-diagonal pairs\n\n";
  out << "| feature_a | feature_b | r |\n|-----------|-----------|---|\n";
  for (const FeaturePair& p : top) {
    out << "| " << kFeatureNames[p.a] << " | " << kFeatureNames[p.b] << " | "
        << fmt3(p.r) << " |\n";
  }
}

void write_top_pairs_csv(const std::vector<FeaturePair>& top,
                         const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "feature_a,feature_b,r\n";
  for (const FeaturePair& p : top) {
    out << kFeatureNames[p.a] << ',' << kFeatureNames[p.b] << ','
        << fmt6(p.r) << '\n';
  }
}

void write_class_summary_csv(const std::vector<ClassSummaryRow>& rows,
                             const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "class,feature,mean,median,std\n";
  for (const ClassSummaryRow& row : rows) {
    for (std::size_t j = 0; j < FeatureVector::kCount; ++j) {
      out << class_token(row.cls) << ',' << kFeatureNames[j] << ','
          << fmt6(row.stats[j].mean) << ',' << fmt6(row.stats[j].median)
          << ',' << fmt6(row.stats[j].stddev) << '\n';
    }
  }
}

}  // namespace fakedet
