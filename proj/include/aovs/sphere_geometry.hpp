#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace aovs::geom {

// Cap parametrization for eps-almost orthogonal directions: the angle
// between two admissible directions is alpha = arccos(eps), and packing
// arguments place disjoint caps of angular radius alpha/2 around each
// direction. h is the cap height on the unit sphere, x_param feeds the
// regularized incomplete beta (x = 1 - cos^2(alpha/2) = 2h - h^2).
struct CapGeometry {
  double alpha;
  double half_angle;
  double h;
  double x_param;
};

// Area-based upper bound for directions in R^n at threshold eps. The bound
// itself can be astronomically large, so the log10 value is authoritative;
// `bound` is materialized only while it fits comfortably in a double
// (log10_bound <= 300).
struct CapBoundResult {
  int n;
  double eps;
  double log10_bound;
  std::optional<double> bound;
};

// ln of V_n(r) = pi^(n/2) / Gamma(n/2 + 1) * r^n.
double ball_volume_log(int n, double r);

// ln of the Stirling-form approximation (1/sqrt(n pi)) (2 pi e / n)^(n/2) r^n.
double ball_volume_stirling_log(int n, double r);

// R_n(V): radius giving volume V, inverted through the Stirling form,
// R_n(V) ~ (pi n)^(1/(2n)) sqrt(n/(2 pi e)) V^(1/n).
double radius_for_volume(int n, double volume);

// side * sqrt(n).
double cube_diameter(double side, int n);

// log10 of 2^-n: the fraction of ambient space a cube occupies at one of its
// corner vertices.
double corner_ambient_fraction(int n);

CapGeometry cap_geometry(double eps);

// Fraction of the unit (n-1)-sphere covered by one cap of angular radius
// alpha/2: (1/2) I_x((n-1)/2, 1/2). Requires n >= 2.
double cap_area_fraction(int n, double eps);

// Inverse of twice the cap fraction; each direction spends two antipodal caps.
CapBoundResult area_bound(int n, double eps);

// (h, fraction) samples of the cap-area fraction over a caller-supplied
// grid of heights in [0, 1].
std::vector<std::pair<double, double>> cap_area_profile(int n, const std::vector<double>& h_grid);

}  // namespace aovs::geom
