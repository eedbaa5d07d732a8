#include "aovs/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aovs/errors.hpp"
#include "aovs/specialfn.hpp"

namespace aovs::geom {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn10 = 2.302585092994045684017991454684364208;

void require_dim(int n, int min_n, const char* fn) {
  if (n < min_n)
    throw DomainError(std::string(fn) + ": dimension must be >= " + std::to_string(min_n) +
                      ", got " + std::to_string(n));
}

void require_eps(double eps, const char* fn) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw DomainError(std::string(fn) + ": eps must lie in [0, 1), got " + std::to_string(eps));
}

}  // namespace

double ball_volume_log(int n, double r) {
  require_dim(n, 1, "ball_volume_log");
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("ball_volume_log: radius must be positive and finite");
  return 0.5 * n * std::log(kPi) - sf::log_gamma(0.5 * n + 1.0) + n * std::log(r);
}

double ball_volume_stirling_log(int n, double r) {
  require_dim(n, 1, "ball_volume_stirling_log");
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("ball_volume_stirling_log: radius must be positive and finite");
  return -0.5 * std::log(n * kPi) + 0.5 * n * std::log(2.0 * kPi * std::exp(1.0) / n) +
         n * std::log(r);
}

double radius_for_volume(int n, double volume) {
  require_dim(n, 1, "radius_for_volume");
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw DomainError("radius_for_volume: volume must be positive and finite");
  return std::exp(std::log(kPi * n) / (2.0 * n) +
                  0.5 * std::log(n / (2.0 * kPi * std::exp(1.0))) + std::log(volume) / n);
}

double cube_diameter(double side, int n) {
  require_dim(n, 1, "cube_diameter");
  if (!(side > 0.0) || !std::isfinite(side))
    throw DomainError("cube_diameter: side must be positive and finite");
  return side * std::sqrt(static_cast<double>(n));
}

double corner_ambient_fraction(int n) {
  require_dim(n, 1, "corner_ambient_fraction");
  return -n * std::log10(2.0);
}

CapGeometry cap_geometry(double eps) {
  require_eps(eps, "cap_geometry");
  CapGeometry g;
  g.alpha = std::acos(eps);
  g.half_angle = 0.5 * g.alpha;
  const double c = std::cos(g.half_angle);
  g.h = 1.0 - c;
  g.x_param = 1.0 - c * c;
  return g;
}

double cap_area_fraction(int n, double eps) {
  require_dim(n, 2, "cap_area_fraction");
  require_eps(eps, "cap_area_fraction");
  const CapGeometry g = cap_geometry(eps);
  return 0.5 * sf::reg_inc_beta(g.x_param, 0.5 * (n - 1), 0.5);
}

CapBoundResult area_bound(int n, double eps) {
  require_dim(n, 2, "area_bound");
  require_eps(eps, "area_bound");
  const CapGeometry g = cap_geometry(eps);
  const double log_i = sf::log_reg_inc_beta(g.x_param, 0.5 * (n - 1), 0.5);
  CapBoundResult res;
  res.n = n;
  res.eps = eps;
  res.log10_bound = -log_i / kLn10;
  if (res.log10_bound <= 300.0)
    res.bound = 1.0 / sf::reg_inc_beta(g.x_param, 0.5 * (n - 1), 0.5);
  return res;
}

std::vector<std::pair<double, double>> cap_area_profile(int n, const std::vector<double>& h_grid) {
  require_dim(n, 2, "cap_area_profile");
  std::vector<std::pair<double, double>> out;
  out.reserve(h_grid.size());
  for (double h : h_grid) {
    if (!(h >= 0.0 && h <= 1.0))
      throw DomainError("cap_area_profile: h must lie in [0, 1], got " + std::to_string(h));
    const double x = std::clamp(2.0 * h - h * h, 0.0, 1.0);
    out.emplace_back(h, 0.5 * sf::reg_inc_beta(x, 0.5 * (n - 1), 0.5));
  }
  return out;
}

}  // namespace aovs::geom
