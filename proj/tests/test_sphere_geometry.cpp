#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "aovs/errors.hpp"
#include "aovs/sphere_geometry.hpp"
#include "doctest.h"

using aovs::DomainError;
namespace geom = aovs::geom;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn10 = 2.302585092994045684017991454684364208;

double log10_ball_volume(int n, double r) { return geom::ball_volume_log(n, r) / kLn10; }

}  // namespace

TEST_SUITE("sphere-geometry") {

TEST_CASE("ball volume closed forms") {
  CHECK(std::fabs(geom::ball_volume_log(1, 1.0) - std::log(2.0)) < 1e-12);
  CHECK(std::fabs(geom::ball_volume_log(2, 1.0) - std::log(kPi)) < 1e-12);
  CHECK(std::fabs(geom::ball_volume_log(3, 1.0) - std::log(4.0 * kPi / 3.0)) < 1e-12);
  CHECK(std::fabs(geom::ball_volume_log(4, 1.0) - std::log(kPi * kPi / 2.0)) < 1e-12);
  // radius enters as r^n
  CHECK(std::fabs(geom::ball_volume_log(2, 2.0) - std::log(4.0 * kPi)) < 1e-12);
  CHECK(std::fabs(geom::ball_volume_log(3, 0.5) - std::log(kPi / 6.0)) < 1e-12);
}

TEST_CASE("ball volume recursion V_n = V_{n-2} * 2*pi/n") {
  for (int n = 3; n <= 50; ++n) {
    const double lhs = geom::ball_volume_log(n, 1.0);
    const double rhs = geom::ball_volume_log(n - 2, 1.0) + std::log(2.0 * kPi / n);
    CHECK(std::fabs(lhs - rhs) < 1e-11);
  }
}

TEST_CASE("768-dimensional unit ball is vanishingly small") {
  const double lg = log10_ball_volume(768, 1.0);
  CHECK(lg < -300.0);
  CHECK(std::fabs(lg - (-636.3999077860117)) < 1e-7);
  const double lg_st = geom::ball_volume_stirling_log(768, 1.0) / kLn10;
  CHECK(lg_st < -300.0);
  CHECK(std::fabs(lg_st - (-636.3998135380987)) < 1e-7);
}

TEST_CASE("stirling form tracks the exact volume") {
  // n = 5 is the worst dimension we promise anything for: the exponentiated
  // gap is ~3.4%, the log-space gap just under 2%.
  const double ex5 = geom::ball_volume_log(5, 1.0);
  const double st5 = geom::ball_volume_stirling_log(5, 1.0);
  CHECK(std::fabs((st5 - ex5) / ex5) < 0.02);
  const double gap5 = std::fabs(std::expm1(st5 - ex5));
  CHECK(gap5 > 0.0337);
  CHECK(gap5 < 0.0338);

  for (int n : {17, 32, 100, 768}) {
    const double gap = std::fabs(std::expm1(geom::ball_volume_stirling_log(n, 1.0) -
                                            geom::ball_volume_log(n, 1.0)));
    CHECK(gap < 0.01);
  }

  double prev = std::numeric_limits<double>::infinity();
  for (int n : {5, 10, 20, 40, 80, 160}) {
    const double gap = std::fabs(std::expm1(geom::ball_volume_stirling_log(n, 1.0) -
                                            geom::ball_volume_log(n, 1.0)));
    CHECK(gap < prev);
    prev = gap;
  }

  CHECK(std::isfinite(geom::ball_volume_stirling_log(1, 2.0)));
}

TEST_CASE("unit ball volume peaks at n = 5") {
  int argmax = 1;
  double best = geom::ball_volume_log(1, 1.0);
  for (int n = 2; n <= 30; ++n) {
    const double v = geom::ball_volume_log(n, 1.0);
    if (v > best) {
      best = v;
      argmax = n;
    }
  }
  CHECK(argmax == 5);
}

TEST_CASE("volume concentrates near the boundary") {
  const double diff = geom::ball_volume_log(768, 0.99) - geom::ball_volume_log(768, 1.0);
  CHECK(std::fabs(diff - 768.0 * std::log(0.99)) < 1e-9);
  CHECK(diff < std::log(0.001));
}

TEST_CASE("radius for a target volume") {
  const double r768 = geom::radius_for_volume(768, 1.0);
  CHECK(std::fabs(r768 - 6.739777982924658) < 1e-9);
  CHECK(std::fabs(r768 - 6.7) <= 0.05);

  const double r2 = geom::radius_for_volume(2, kPi);
  CHECK(std::fabs(r2 - 0.9602796514015013) < 1e-9);
  CHECK(std::fabs(r2 - 1.0) <= 0.15);
}

TEST_CASE("radius round-trips through the stirling volume") {
  // radius_for_volume inverts the stirling form algebraically, so this
  // round trip is exact up to rounding.
  for (int n : {2, 8, 32, 768, 4096}) {
    for (double v : {1e-6, 0.1, 1.0, 10.0, 1e6}) {
      const double r = geom::radius_for_volume(n, v);
      CHECK(std::fabs(geom::ball_volume_stirling_log(n, r) - std::log(v)) < 1e-9);
    }
  }
  // against the exact volume the stirling error is all that remains
  for (int n : {32, 768, 4096}) {
    for (double v : {0.1, 1.0, 10.0}) {
      const double r = geom::radius_for_volume(n, v);
      const double lnv = std::log(v);
      CHECK(std::fabs(geom::ball_volume_log(n, r) - lnv) <= 0.02 * std::fabs(lnv) + 0.02);
    }
  }
}

TEST_CASE("cube diameter and corner fraction") {
  CHECK(geom::cube_diameter(1.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(geom::cube_diameter(2.0, 4) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(std::fabs(geom::cube_diameter(1.0, 768) - 27.712812921102035) < 1e-12);

  CHECK(std::fabs(geom::corner_ambient_fraction(1) - std::log10(0.5)) < 1e-15);
  CHECK(std::fabs(geom::corner_ambient_fraction(3) - std::log10(0.125)) < 1e-14);
  const double f768 = geom::corner_ambient_fraction(768);
  CHECK(f768 < -200.0);
  CHECK(std::fabs(f768 - (-231.19103667009757)) < 1e-9);
}

TEST_CASE("cap geometry at eps = 0") {
  const geom::CapGeometry g = geom::cap_geometry(0.0);
  CHECK(std::fabs(g.alpha - kPi / 2.0) < 1e-15);
  CHECK(std::fabs(g.half_angle - kPi / 4.0) < 1e-15);
  CHECK(std::fabs(g.h - (1.0 - std::sqrt(2.0) / 2.0)) < 1e-15);
  CHECK(std::fabs(g.x_param - 0.5) < 1e-15);
}

TEST_CASE("cap geometry at eps = 0.1") {
  const geom::CapGeometry g = geom::cap_geometry(0.1);
  CHECK(std::fabs(g.alpha - 1.4706289056333368) < 1e-12);
  CHECK(std::fabs(g.h - 0.2583801512904337) < 1e-12);
  CHECK(std::fabs(g.x_param - 0.45) < 1e-12);
}

TEST_CASE("cap geometry degenerates as eps -> 1") {
  const geom::CapGeometry g = geom::cap_geometry(1.0 - 1e-12);
  CHECK(g.alpha < 1e-5);
  CHECK(g.h < 1e-11);
  CHECK(g.x_param < 1e-11);
}

TEST_CASE("cap geometry internal identities") {
  // x = 2h - h^2 by expanding 1 - cos^2, and x = (1-eps)/2 by the
  // half-angle formula; both must hold simultaneously.
  for (double eps = 0.0; eps < 0.96; eps += 0.05) {
    const geom::CapGeometry g = geom::cap_geometry(eps);
    CHECK(std::fabs(g.x_param - (2.0 * g.h - g.h * g.h)) < 1e-12);
    CHECK(std::fabs(g.x_param - (1.0 - eps) / 2.0) < 1e-12);
    CHECK(std::fabs(g.half_angle - g.alpha / 2.0) < 1e-15);
  }
}

TEST_CASE("cap area fraction closed forms") {
  CHECK(std::fabs(geom::cap_area_fraction(2, 0.0) - 0.25) < 1e-12);
  CHECK(std::fabs(geom::cap_area_fraction(3, 0.0) - (2.0 - std::sqrt(2.0)) / 4.0) < 1e-12);
  for (int n : {2, 3, 8, 100}) {
    for (double eps : {0.0, 0.3, 0.9}) {
      const double f = geom::cap_area_fraction(n, eps);
      CHECK(f > 0.0);
      CHECK(f <= 0.5);
    }
  }
}

TEST_CASE("area bound matches the published table") {
  struct Cell {
    int n;
    double eps;
    double mantissa;
    int exp10;
  };
  const Cell cells[] = {
      {2, 0.1, 2.136, 0},    {2, 0.01, 2.013, 0},   {2, 0.0, 2.0, 0},
      {3, 0.1, 3.87, 0},     {3, 0.01, 3.456, 0},   {3, 0.0, 3.414, 0},
      {4, 0.1, 6.605, 0},    {4, 0.01, 5.602, 0},   {4, 0.0, 5.504, 0},
      {8, 0.1, 45.08, 0},    {8, 0.01, 31.36, 0},   {8, 0.0, 30.17, 0},
      {16, 0.1, 1526.0, 0},  {16, 0.01, 720.9, 0},  {16, 0.0, 665.9, 0},
      {32, 0.1, 1.267, 6},   {32, 0.01, 2.784, 5},  {32, 0.0, 2.372, 5},
      {768, 0.1, 2.537, 134}, {768, 0.01, 3.249, 118}, {768, 0.0, 6.849, 116},
      {4096, 0.1, 6.635, 711}, {4096, 0.01, 1.127, 627}, {4096, 0.0, 1.296, 618},
  };
  for (const Cell& c : cells) {
    CAPTURE(c.n);
    CAPTURE(c.eps);
    const geom::CapBoundResult res = geom::area_bound(c.n, c.eps);
    const double expected_log10 = std::log10(c.mantissa) + c.exp10;
    CHECK(std::fabs(res.log10_bound - expected_log10) < 1e-3);
    CHECK(res.log10_bound >= std::log10(2.0) - 1e-12);
    if (res.log10_bound <= 300.0) {
      REQUIRE(res.bound.has_value());
      CHECK(std::fabs(*res.bound / std::pow(10.0, res.log10_bound) - 1.0) < 1e-9);
    } else {
      CHECK(!res.bound.has_value());
    }
  }
  // the three 4096-cells overflow; everything else materializes
  CHECK(!geom::area_bound(4096, 0.1).bound.has_value());
  CHECK(geom::area_bound(768, 0.1).bound.has_value());
  CHECK(std::fabs(*geom::area_bound(768, 0.1).bound / 2.537e134 - 1.0) < 2.5e-3);
  CHECK(std::fabs(*geom::area_bound(2, 0.0).bound - 2.0) < 1e-12);
  CHECK(std::fabs(*geom::area_bound(3, 0.0).bound - (2.0 + std::sqrt(2.0))) < 1e-3);
  CHECK(std::fabs(*geom::area_bound(8, 0.1).bound / 45.08 - 1.0) < 0.005);
}

TEST_CASE("area bound is monotone in n and eps") {
  const int dims[] = {2, 3, 4, 8, 16, 32, 768, 4096};
  for (double eps : {0.0, 0.01, 0.1}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int n : dims) {
      const double lg = geom::area_bound(n, eps).log10_bound;
      CHECK(lg > prev);
      prev = lg;
    }
  }
  for (int n : dims) {
    const double a = geom::area_bound(n, 0.0).log10_bound;
    const double b = geom::area_bound(n, 0.01).log10_bound;
    const double c = geom::area_bound(n, 0.1).log10_bound;
    CHECK(a <= b);
    CHECK(b <= c);
  }
}

TEST_CASE("fraction and bound are mutually consistent") {
  for (int n : {2, 3, 8, 32}) {
    for (double eps : {0.0, 0.1}) {
      const geom::CapBoundResult res = geom::area_bound(n, eps);
      REQUIRE(res.bound.has_value());
      const double product = geom::cap_area_fraction(n, eps) * 2.0 * *res.bound;
      CHECK(std::fabs(product - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("cap area profile endpoints and monotonicity") {
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto prof = geom::cap_area_profile(3, grid);
  REQUIRE(prof.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(prof[i].first == grid[i]);
  CHECK(prof.front().second == 0.0);
  CHECK(prof.back().second == 0.5);
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].second >= prof[i - 1].second);

  // arcsine law on the circle: h = 1/2 covers a third of it
  const auto circ = geom::cap_area_profile(2, {0.5});
  CHECK(std::fabs(circ[0].second - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("cap area concentrates on the equator in high dimension") {
  std::vector<double> grid(401);
  for (int i = 0; i <= 400; ++i) grid[i] = i / 400.0;
  const auto prof = geom::cap_area_profile(256, grid);
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].second >= prof[i - 1].second);
  // almost nothing below h = 0.75, half of the sphere by h = 1
  double at_075 = 0.0;
  for (const auto& [h, f] : prof)
    if (h == 0.75) at_075 = f;
  CHECK(at_075 < 0.01);
  CHECK(prof.back().second == 0.5);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(geom::ball_volume_log(0, 1.0), DomainError);
  CHECK_THROWS_AS(geom::ball_volume_log(2, 0.0), DomainError);
  CHECK_THROWS_AS(geom::ball_volume_log(2, -1.0), DomainError);
  CHECK_THROWS_AS(geom::ball_volume_stirling_log(2, -1.0), DomainError);
  CHECK_THROWS_AS(geom::radius_for_volume(2, 0.0), DomainError);
  CHECK_THROWS_AS(geom::radius_for_volume(0, 1.0), DomainError);
  CHECK_THROWS_AS(geom::cube_diameter(0.0, 3), DomainError);
  CHECK_THROWS_AS(geom::cube_diameter(-2.0, 3), DomainError);
  CHECK_THROWS_AS(geom::corner_ambient_fraction(0), DomainError);
  CHECK_THROWS_AS(geom::cap_geometry(-0.01), DomainError);
  CHECK_THROWS_AS(geom::cap_geometry(1.0), DomainError);
  CHECK_THROWS_AS(geom::cap_area_fraction(1, 0.0), DomainError);
  CHECK_THROWS_AS(geom::area_bound(1, 0.1), DomainError);
  CHECK_THROWS_AS(geom::cap_area_profile(1, {0.5}), DomainError);
  CHECK_THROWS_AS(geom::cap_area_profile(3, {-0.1}), DomainError);
  CHECK_THROWS_AS(geom::cap_area_profile(3, {1.1}), DomainError);
}

}  // TEST_SUITE
