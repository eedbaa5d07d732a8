#include "aovs/vecset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aovs/errors.hpp"

namespace aovs::vec {

namespace {

// Linear interpolation between order statistics at position p*(N-1).
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

RawMatrix::RawMatrix(MatrixRM m) : m_(std::move(m)) {
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      if (!std::isfinite(m_(i, j)))
        throw DomainError("RawMatrix: non-finite entry at row " + std::to_string(i + 1) +
                          ", column " + std::to_string(j + 1));
}

UnitVectorSet::UnitVectorSet(MatrixRM m) : m_(std::move(m)) {
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    const double norm = m_.row(i).norm();
    if (!std::isfinite(norm) || std::fabs(norm - 1.0) > 1e-9)
      throw DomainError("UnitVectorSet: row " + std::to_string(i + 1) +
                        " has norm " + std::to_string(norm) + ", expected 1");
  }
}

UnitVectorSet UnitVectorSet::normalizing(MatrixRM m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw DomainError("UnitVectorSet: cannot normalize zero row " + std::to_string(i + 1));
    m.row(i) /= norm;
  }
  return UnitVectorSet(std::move(m), already_unit_tag{});
}

CosineStats summarize_samples(std::vector<double> values) {
  CosineStats st;
  st.pair_count = static_cast<std::int64_t>(values.size());
  if (values.empty()) return st;
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - st.mean) * (v - st.mean);
  st.std = std::sqrt(ss / static_cast<double>(values.size()));
  std::sort(values.begin(), values.end());
  st.min = values.front();
  st.max = values.back();
  st.q25 = quantile_sorted(values, 0.25);
  st.q50 = quantile_sorted(values, 0.50);
  st.q75 = quantile_sorted(values, 0.75);
  st.max_abs = std::max(std::fabs(st.min), std::fabs(st.max));
  return st;
}

// Upper-triangle cosines via row blocks: keeps memory at block*count instead
// of count^2 when collecting every pair.
std::vector<double> upper_triangle_cosines(const UnitVectorSet& s) {
  const MatrixRM& m = s.data();
  const Eigen::Index k = m.rows();
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index b = 0; b < k; b += kBlock) {
    const Eigen::Index rows = std::min(kBlock, k - b);
    const MatrixRM g = m.middleRows(b, rows) * m.transpose();
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index j = b + r + 1; j < k; ++j)
        vals.push_back(std::clamp(g(r, j), -1.0, 1.0));
  }
  return vals;
}

CosineStats pairwise_cosine_stats(const UnitVectorSet& s) {
  if (s.count() < 2) throw DomainError("pairwise_cosine_stats: need at least 2 vectors");
  return summarize_samples(upper_triangle_cosines(s));
}

double max_abs_offdiag(const UnitVectorSet& s) {
  if (s.count() < 2) throw DomainError("max_abs_offdiag: need at least 2 vectors");
  const MatrixRM& m = s.data();
  const Eigen::Index k = m.rows();
  double best = 0.0;
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index b = 0; b < k; b += kBlock) {
    const Eigen::Index rows = std::min(kBlock, k - b);
    const MatrixRM g = m.middleRows(b, rows) * m.transpose();
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index j = b + r + 1; j < k; ++j)
        best = std::max(best, std::min(std::fabs(g(r, j)), 1.0));
  }
  return best;
}

NormStats norm_stats(const RawMatrix& m) {
  if (m.rows() < 1) throw DomainError("norm_stats: empty matrix");
  std::vector<double> norms(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) norms[i] = m.data().row(i).norm();
  const CosineStats st = summarize_samples(std::move(norms));
  return {st.mean, st.std, st.q25, st.q50, st.q75};
}

std::vector<double> standardize_samples(const std::vector<double>& values) {
  if (values.size() < 2)
    throw DomainError("standardize_samples: need at least 2 values, got " +
                      std::to_string(values.size()));
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size()));
  if (!(sd > 0.0)) throw DomainError("standardize_samples: zero standard deviation");
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - mean) / sd);
  return out;
}

Histogram histogram(const std::vector<double>& values, int bins, double lo, double hi) {
  if (bins < 1) throw DomainError("histogram: bins must be >= 1, got " + std::to_string(bins));
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("histogram: need finite lo < hi");
  Histogram h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + width * i;
  h.bin_edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto idx = static_cast<std::int64_t>(std::floor((v - lo) / width));
    idx = std::clamp<std::int64_t>(idx, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

}  // namespace aovs::vec
