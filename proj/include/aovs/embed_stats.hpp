#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aovs/vecset.hpp"

namespace aovs::stats {

// One analyzed embedding matrix: cosine distribution over (sampled) pairs,
// norm distribution over all rows, and the standardized cosine histogram.
struct EmbeddingReport {
  std::string source_label;
  int dim = 0;
  std::int64_t row_count = 0;
  vec::CosineStats cosine;
  vec::NormStats norms;
  // Standardized cosines over 101 bins spanning [-5, 5] sigma. Left empty
  // when the cosine std is zero and standardization is undefined.
  vec::Histogram standardized_histogram;
  std::int64_t sample_pairs_used = 0;
};

// Cosine statistics over all unordered row pairs when their number is within
// pair_budget (0 = unlimited), else over pair_budget pairs sampled uniformly
// without replacement (seeded). Norms always cover every row.
EmbeddingReport analyze_embeddings(const vec::RawMatrix& m, std::int64_t pair_budget,
                                   std::uint64_t seed, const std::string& source_label = "");

struct NormalComparisonRow {
  double z = 0.0;
  double empirical = 0.0;
  double normal = 0.0;
};

// Aligned empirical and standard-normal densities at the histogram's bin
// centers. Both are bin-averaged, so each integrates to 1 over the bins (the
// normal one up to its mass beyond the histogram range).
std::vector<NormalComparisonRow> compare_to_normal(const EmbeddingReport& report);

std::string report_to_json(const EmbeddingReport& report);

// CSV with header "z,empirical,normal".
std::string normal_comparison_csv(const std::vector<NormalComparisonRow>& rows);

}  // namespace aovs::stats
