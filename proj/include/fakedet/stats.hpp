#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "fakedet/types.hpp"

namespace fakedet {

// Pearson product-moment coefficient with population moments. A series
// with zero variance yields 0 rather than NaN.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct CorrelationMatrix {
  std::array<std::array<double, FeatureVector::kCount>, FeatureVector::kCount>
      r{};
};

struct FeaturePair {
  std::size_t a = 0;
  std::size_t b = 0;
  double r = 0.0;
};

// Pairwise Pearson over the canonical 17-feature order. Needs >= 2 examples.
CorrelationMatrix correlation_matrix(const std::vector<LabeledExample>& examples);

// Off-diagonal pairs ranked by |r| descending; ties broken by index.
std::vector<FeaturePair> top_pairs(const CorrelationMatrix& matrix,
                                   std::size_t k = 5);

struct FeatureStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population
};

struct ClassSummaryRow {
  UserClass cls = UserClass::Authentic;
  std::array<FeatureStats, FeatureVector::kCount> stats{};
};

// One row per class present, in class-index order.
std::vector<ClassSummaryRow> class_summary(
    const std::vector<LabeledExample>& examples);

void write_correlation_csv(const CorrelationMatrix& matrix,
                           const std::filesystem::path& path);
void write_correlation_markdown(const CorrelationMatrix& matrix,
                                const std::vector<FeaturePair>& top,
                                const std::filesystem::path& path);
void write_top_pairs_csv(const std::vector<FeaturePair>& top,
                         const std::filesystem::path& path);
void write_class_summary_csv(const std::vector<ClassSummaryRow>& rows,
                             const std::filesystem::path& path);

}  // namespace fakedet
