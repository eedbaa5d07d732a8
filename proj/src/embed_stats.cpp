#include "aovs/embed_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "aovs/errors.hpp"
#include "aovs/rng.hpp"
#include "json.hpp"

namespace aovs::stats {

namespace {

using vec::MatrixRM;

// Uniform integer in [0, n) without modulo bias.
std::uint64_t bounded_u64(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  while (true) {
    const std::uint64_t u = rng.next_u64();
    if (u >= threshold) return u % n;
  }
}

// Number of pairs (r, c) with r < c < k that precede row i's pairs when the
// upper triangle is walked in row-major order.
std::int64_t pair_offset(std::int64_t i, std::int64_t k) { return i * k - i * (i + 1) / 2; }

// Inverse of the row-major upper-triangle enumeration: linear index t -> (i, j).
std::pair<std::int64_t, std::int64_t> decode_pair(std::int64_t t, std::int64_t k) {
  const double kk = 2.0 * static_cast<double>(k) - 1.0;
  auto i = static_cast<std::int64_t>((kk - std::sqrt(kk * kk - 8.0 * static_cast<double>(t))) / 2.0);
  i = std::clamp<std::int64_t>(i, 0, k - 2);
  while (i + 1 <= k - 2 && pair_offset(i + 1, k) <= t) ++i;
  while (i > 0 && pair_offset(i, k) > t) --i;
  return {i, i + 1 + (t - pair_offset(i, k))};
}

constexpr int kHistBins = 101;
constexpr double kHistLo = -5.0;
constexpr double kHistHi = 5.0;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

EmbeddingReport analyze_embeddings(const vec::RawMatrix& m, std::int64_t pair_budget,
                                   std::uint64_t seed, const std::string& source_label) {
  if (m.rows() < 2)
    throw DomainError("analyze_embeddings: need at least 2 rows, got " + std::to_string(m.rows()));
  if (pair_budget < 0) throw DomainError("analyze_embeddings: pair_budget must be >= 0");
  for (std::int64_t i = 0; i < m.rows(); ++i)
    if (m.data().row(i).norm() == 0.0)
      throw DomainError("analyze_embeddings: row " + std::to_string(i + 1) + " is zero");

  EmbeddingReport report;
  report.source_label = source_label;
  report.dim = static_cast<int>(m.cols());
  report.row_count = m.rows();
  report.norms = vec::norm_stats(m);

  const std::int64_t k = m.rows();
  const std::int64_t total = k * (k - 1) / 2;
  const vec::UnitVectorSet unit = vec::UnitVectorSet::normalizing(m.data());

  std::vector<double> samples;
  if (pair_budget == 0 || total <= pair_budget) {
    samples = vec::upper_triangle_cosines(unit);
    report.sample_pairs_used = total;
  } else {
    Rng rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(pair_budget) * 2);
    std::vector<std::int64_t> picks;
    picks.reserve(static_cast<std::size_t>(pair_budget));
    while (std::ssize(picks) < pair_budget) {
      const std::uint64_t t = bounded_u64(rng, static_cast<std::uint64_t>(total));
      if (chosen.insert(t).second) picks.push_back(static_cast<std::int64_t>(t));
    }
    // sorted pair order makes the accumulation order (and cache walk) fixed
    std::sort(picks.begin(), picks.end());
    const MatrixRM& u = unit.data();
    samples.reserve(picks.size());
    for (const std::int64_t t : picks) {
      const auto [i, j] = decode_pair(t, k);
      samples.push_back(std::clamp(u.row(i).dot(u.row(j)), -1.0, 1.0));
    }
    report.sample_pairs_used = pair_budget;
  }

  report.cosine = vec::summarize_samples(samples);
  if (report.cosine.std > 0.0)
    report.standardized_histogram =
        vec::histogram(vec::standardize_samples(samples), kHistBins, kHistLo, kHistHi);
  return report;
}

std::vector<NormalComparisonRow> compare_to_normal(const EmbeddingReport& report) {
  const vec::Histogram& h = report.standardized_histogram;
  const std::int64_t n =
      std::accumulate(h.counts.begin(), h.counts.end(), static_cast<std::int64_t>(0));
  if (h.counts.empty() || n <= 0)
    throw DomainError(
        "compare_to_normal: empty standardized histogram (degenerate cosine distribution)");

  std::vector<NormalComparisonRow> rows;
  rows.reserve(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double left = h.bin_edges[b];
    const double right = h.bin_edges[b + 1];
    const double width = right - left;
    NormalComparisonRow row;
    row.z = 0.5 * (left + right);
    row.empirical = static_cast<double>(h.counts[b]) / (static_cast<double>(n) * width);
    row.normal = (normal_cdf(right) - normal_cdf(left)) / width;
    rows.push_back(row);
  }
  return rows;
}

std::string report_to_json(const EmbeddingReport& report) {
  nlohmann::ordered_json j;
  j["source_label"] = report.source_label;
  j["dim"] = report.dim;
  j["row_count"] = report.row_count;
  j["sample_pairs_used"] = report.sample_pairs_used;
  j["cosine"] = {{"pair_count", report.cosine.pair_count}, {"mean", report.cosine.mean},
                 {"std", report.cosine.std},               {"q25", report.cosine.q25},
                 {"q50", report.cosine.q50},               {"q75", report.cosine.q75},
                 {"min", report.cosine.min},               {"max", report.cosine.max},
                 {"max_abs", report.cosine.max_abs}};
  j["norms"] = {{"mean", report.norms.mean},
                {"std", report.norms.std},
                {"q25", report.norms.q25},
                {"q50", report.norms.q50},
                {"q75", report.norms.q75}};
  j["standardized_histogram"] = {{"bin_edges", report.standardized_histogram.bin_edges},
                                 {"counts", report.standardized_histogram.counts}};
  return j.dump(2) + "\n";
}

std::string normal_comparison_csv(const std::vector<NormalComparisonRow>& rows) {
  std::string out = "z,empirical,normal\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", row.z, row.empirical, row.normal);
    out += buf;
  }
  return out;
}

}  // namespace aovs::stats
