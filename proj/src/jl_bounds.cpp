#include "aovs/jl_bounds.hpp"

#include <cmath>
#include <string>

#include "aovs/errors.hpp"

namespace aovs::jl {

namespace {

constexpr double kLn10 = 2.302585092994045684017991454684364208;

void require_open_unit(double v, const char* fn, const char* name) {
  if (!(v > 0.0 && v < 1.0))
    throw DomainError(std::string(fn) + ": " + name + " must lie in (0, 1), got " +
                      std::to_string(v));
}

double min_dim_expr(std::int64_t k, double eps, const JlConstant& c) {
  const double lnk = std::log(static_cast<double>(k));
  if (c.label == "dasgupta-gupta") return 4.0 * lnk / (eps * eps / 2.0 - eps * eps * eps / 3.0);
  return c.c * lnk / (eps * eps);
}

// ln(N + 1) as a function of n, shared by the count bound and the search.
double log_count_plus_one(double n, double t) {
  const double q = 2.0 * t / (1.0 - t);
  return n / 8.0 * q * q;
}

}  // namespace

JlConstant jl_constant_from_label(const std::string& label) {
  if (label == "c8") return {8.0, "c8"};
  if (label == "c16") return {16.0, "c16"};
  if (label == "c20") return {20.0, "c20"};
  if (label == "c200") return {200.0, "c200"};
  if (label == "dasgupta-gupta") return {4.0, "dasgupta-gupta"};
  throw DomainError("jl_constant_from_label: unknown label '" + label +
                    "' (expected c8, c16, c20, c200 or dasgupta-gupta)");
}

JlBoundResult jl_min_dimension(std::int64_t k, double eps, const JlConstant& c) {
  if (k < 2) throw DomainError("jl_min_dimension: k must be >= 2, got " + std::to_string(k));
  require_open_unit(eps, "jl_min_dimension", "eps");
  if (!(c.c > 0.0)) throw DomainError("jl_min_dimension: constant must be positive");
  const double expr = min_dim_expr(k, eps, c);
  if (!(expr < 9.0e18))
    throw NumericError("jl_min_dimension: required dimension exceeds the representable range");
  return {k, eps, static_cast<std::int64_t>(std::floor(expr)) + 1, c};
}

CosineDistortion cosine_distortion(double eps) {
  require_open_unit(eps, "cosine_distortion", "eps");
  return {eps, -2.0 * eps / (1.0 + eps), 2.0 * eps / (1.0 - eps)};
}

double threshold_to_jl_eps(double t) {
  require_open_unit(t, "threshold_to_jl_eps", "t");
  return t / (2.0 + t);
}

JlCountBound jl_count_bound(std::int64_t n, double t) {
  if (n < 1) throw DomainError("jl_count_bound: n must be >= 1, got " + std::to_string(n));
  require_open_unit(t, "jl_count_bound", "t");
  JlCountBound res;
  res.n = n;
  res.t = t;
  res.log_count_plus_one = log_count_plus_one(static_cast<double>(n), t);
  // Same materialization cutoff as the cap bounds: keep counts below 1e300.
  if (res.log_count_plus_one < 300.0 * kLn10) res.count = std::expm1(res.log_count_plus_one);
  return res;
}

JlCountBound jl_count_bound_paper_chain(std::int64_t n, double t) {
  if (n < 1)
    throw DomainError("jl_count_bound_paper_chain: n must be >= 1, got " + std::to_string(n));
  require_open_unit(t, "jl_count_bound_paper_chain", "t");
  JlCountBound res;
  res.n = n;
  res.t = t;
  res.log_count_plus_one = n * t * t / 32.0;
  if (res.log_count_plus_one < 300.0 * kLn10) res.count = std::expm1(res.log_count_plus_one);
  return res;
}

std::int64_t jl_crossover_dimension(double t) {
  require_open_unit(t, "jl_crossover_dimension", "t");
  // N_bound > n  <=>  ln(N + 1) > ln(n + 1); both sides stay tiny in log space.
  const auto exceeds = [t](std::int64_t n) {
    return log_count_plus_one(static_cast<double>(n), t) >
           std::log(static_cast<double>(n) + 1.0);
  };
  std::int64_t hi = 1;
  while (!exceeds(hi)) {
    if (hi > (std::int64_t{1} << 60))
      throw NumericError("jl_crossover_dimension: crossover exceeds the search range");
    hi *= 2;
  }
  std::int64_t lo = hi / 2 + 1;
  if (hi == 1) return 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (exceeds(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace aovs::jl
