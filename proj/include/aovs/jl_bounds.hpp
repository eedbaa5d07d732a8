#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace aovs::jl {

// Multiplier variant in the dimension bound n > c * ln(k) / eps^2. The
// published constants differ by source; "dasgupta-gupta" selects the
// functional bound n > 4 (eps^2/2 - eps^3/3)^(-1) ln(k) instead of a plain
// multiplier.
struct JlConstant {
  double c = 8.0;
  std::string label = "c8";
};

// Labels: c8, c16, c20, c200, dasgupta-gupta.
JlConstant jl_constant_from_label(const std::string& label);

struct JlBoundResult {
  std::int64_t k;
  double eps;
  std::int64_t n_min;
  JlConstant c;
};

struct CosineDistortion {
  double eps;
  double lower;  // -2 eps / (1 + eps)
  double upper;  //  2 eps / (1 - eps)
};

struct JlCountBound {
  std::int64_t n;
  double t;
  double log_count_plus_one;     // ln(N_bound + 1)
  std::optional<double> count;   // materialized while < 1e300
};

// Least n admitted by the bound, i.e. floor(expr) + 1.
JlBoundResult jl_min_dimension(std::int64_t k, double eps, const JlConstant& c = JlConstant{});

// Cosine-similarity interval for images of orthonormal vectors under a map
// with JL distortion eps.
CosineDistortion cosine_distortion(double eps);

// Exact inverse of the distortion upper bound: the eps with
// 2 eps / (1 - eps) = t, namely t / (2 + t).
double threshold_to_jl_eps(double t);

// Count bound N < exp((n/8) (2t/(1-t))^2) - 1 for t-almost orthogonal
// vectors obtainable in R^n by a JL projection.
JlCountBound jl_count_bound(std::int64_t n, double t);

// Same count, but through the half-threshold heuristic eps = t/2 plugged
// straight into n > 8 ln(k) / eps^2, i.e. ln(N + 1) = n t^2 / 32.
JlCountBound jl_count_bound_paper_chain(std::int64_t n, double t);

// Least n for which jl_count_bound(n, t) exceeds n itself (monotone search).
std::int64_t jl_crossover_dimension(double t);

}  // namespace aovs::jl
