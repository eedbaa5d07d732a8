#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aovs/errors.hpp"

namespace aovs::vec {

// Row-major so a row is one vector, matching the on-disk layout.
using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Matrix of finite 64-bit reals as ingested from a file; no norm guarantees.
class RawMatrix {
 public:
  RawMatrix() = default;
  explicit RawMatrix(MatrixRM m);  // rejects non-finite entries

  std::int64_t rows() const { return m_.rows(); }
  std::int64_t cols() const { return m_.cols(); }
  const MatrixRM& data() const { return m_; }

 private:
  MatrixRM m_;
};

// count x dim matrix whose rows are unit vectors (norm within 1e-9 of 1).
class UnitVectorSet {
 public:
  explicit UnitVectorSet(MatrixRM m);  // rejects rows that are not unit length

  // Normalizes each row first; rejects zero rows.
  static UnitVectorSet normalizing(MatrixRM m);

  int dim() const { return static_cast<int>(m_.cols()); }
  std::int64_t count() const { return m_.rows(); }
  const MatrixRM& data() const { return m_; }

 private:
  struct already_unit_tag {};
  UnitVectorSet(MatrixRM m, already_unit_tag) : m_(std::move(m)) {}
  MatrixRM m_;
};

struct CosineStats {
  std::int64_t pair_count = 0;
  double mean = 0.0;
  double std = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double min = 0.0;
  double max = 0.0;
  double max_abs = 0.0;
};

struct NormStats {
  double mean = 0.0;
  double std = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
};

struct Histogram {
  std::vector<double> bin_edges;        // ascending, one more than counts
  std::vector<std::int64_t> counts;
};

// <v,w>/(|v||w|), clamped to [-1, 1]. Takes any Eigen vector expression
// (rows of a row-major matrix included).
template <typename DerA, typename DerB>
double cosine_similarity(const Eigen::MatrixBase<DerA>& v, const Eigen::MatrixBase<DerB>& w) {
  if (v.size() != w.size())
    throw DomainError("cosine_similarity: dimension mismatch (" + std::to_string(v.size()) +
                      " vs " + std::to_string(w.size()) + ")");
  const double nv = v.norm();
  const double nw = w.norm();
  if (!(nv > 0.0) || !(nw > 0.0)) throw DomainError("cosine_similarity: zero vector");
  return std::clamp(v.dot(w) / (nv * nw), -1.0, 1.0);
}

// Statistics over the count*(count-1)/2 unordered off-diagonal pairs.
// Std is population (divide by N); quantiles interpolate linearly between
// order statistics at position p*(N-1).
CosineStats pairwise_cosine_stats(const UnitVectorSet& s);

// The raw pair cosines behind pairwise_cosine_stats, row-major pair order.
// Materializes count*(count-1)/2 doubles; callers own the memory tradeoff.
std::vector<double> upper_triangle_cosines(const UnitVectorSet& s);

double max_abs_offdiag(const UnitVectorSet& s);

NormStats norm_stats(const RawMatrix& m);

// Shifts to mean 0 and scales to (population) std 1, order preserved.
std::vector<double> standardize_samples(const std::vector<double>& values);

// Uniform bins over [lo, hi); out-of-range values land in the end bins, the
// upper boundary itself in the last bin.
Histogram histogram(const std::vector<double>& values, int bins, double lo, double hi);

// Summary shared by the cosine and norm paths; values need not be sorted.
CosineStats summarize_samples(std::vector<double> values);

enum class Format { csv, f32bin };

// .csv / .f32 extension dispatch; anything else is a domain error.
Format format_from_path(const std::filesystem::path& path);

RawMatrix read_matrix(const std::filesystem::path& path, Format format);
void write_matrix(const RawMatrix& m, const std::filesystem::path& path, Format format);

}  // namespace aovs::vec
