#include <doctest.h>

#include "freegamma/measures.hpp"
#include "freegamma/transforms.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace fg;

namespace {

std::vector<GFGParams> parameter_grid() {
  std::vector<GFGParams> out;
  for (double t : {0.5, 1.0, 2.0})
    for (double theta : {0.5, 1.0, 2.0})
      for (double lf : {0.0, 0.5, 1.0, 1.7}) {
        // lf scales lambda - 1 relative to the boundary t/theta.
        out.push_back(GFGParams::make(t, theta, 1.0 + lf * t / theta));
      }
  return out;
}

// Edge of {density > 0} by bisection between an inside and an outside point.
double bisect_edge(const GFGParams& p, double inside, double outside) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (gfg_density(p, mid) > 0.0) inside = mid;
    else outside = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

TEST_CASE("support endpoints") {
  SUBCASE("lambda one") {
    const auto s = support(GFGParams::make(1, 1, 1));
    CHECK(s.lo == doctest::Approx(3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(s.hi == doctest::Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("boundary has a hard edge at zero") {
    const auto s = support(GFGParams::make(1, 1, 2));
    CHECK(s.lo == 0.0);
    CHECK(s.hi == doctest::Approx(8.0));
  }
  SUBCASE("edges agree with the zero set of the density") {
    const auto p = GFGParams::make(2, 0.5, 3);
    const auto s = support(p);
    const double mid = 0.5 * (s.lo + s.hi);
    CHECK(bisect_edge(p, mid, 0.0) == doctest::Approx(s.lo).epsilon(1e-10));
    CHECK(bisect_edge(p, mid, 2.0 * s.hi) == doctest::Approx(s.hi).epsilon(1e-10));
  }
  SUBCASE("endpoint sum and product") {
    for (const auto& p : parameter_grid()) {
      const auto s = support(p);
      CHECK(s.lo + s.hi == doctest::Approx(2.0 * (p.theta * (p.lambda + 1.0) + p.t)).epsilon(1e-13));
      const double g = p.theta * (p.lambda - 1.0) - p.t;
      CHECK(s.lo * s.hi == doctest::Approx(g * g).epsilon(1e-10).scale(1.0));
      CHECK(s.lo >= 0.0);
    }
  }
}

TEST_CASE("atom mass") {
  CHECK(atom_mass(GFGParams::make(1, 1, 3)) == doctest::Approx(0.5));
  CHECK(atom_mass(GFGParams::make(1, 1, 1)) == 0.0);
  CHECK(atom_mass(GFGParams::make(1, 1, 2)) == 0.0);

  const auto p = GFGParams::make(1, 1, 3);
  const double y = 1e-9;
  const Complex z(0.0, y);
  CHECK((z * cauchy_transform(p, z)).real() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("densities at reference points") {
  CHECK(gfg_density(GFGParams::make(1, 1, 1), 3.0) == doctest::Approx(std::sqrt(2.0) / (9.0 * std::numbers::pi)).epsilon(1e-13));
  CHECK(inverse_mp_density(MPParams::make(1, 1), 1.0) == doctest::Approx(std::sqrt(3.0) / (2.0 * std::numbers::pi)).epsilon(1e-13));
  for (const auto& p : parameter_grid()) {
    const auto s = support(p);
    CHECK(gfg_density(p, s.hi) == 0.0);
    if (s.lo > 0.0) CHECK(gfg_density(p, s.lo) == 0.0);
    CHECK(gfg_density(p, 0.5 * (s.lo + s.hi)) > 0.0);
    CHECK(gfg_density(p, s.hi * 1.01) == 0.0);
  }
  CHECK_THROWS_AS(inverse_mp_density(MPParams::make(1, 0.5), 1.0), Error);
  CHECK(density(family::Fbp{2, 3}, 1.0) == doctest::Approx(gfg_density(GFGParams::make(1, 0.5, 2), 1.0)).epsilon(1e-13));
}

TEST_CASE("normalization over a parameter grid") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (const auto& p : parameter_grid()) {
    const auto s = support(p);
    const double mass = ts.integrate([&](double x) { return gfg_density(p, x); }, s.lo, s.hi);
    CHECK(atom_mass(p) + mass == doctest::Approx(1.0).epsilon(1e-8));
  }
  for (double lambda : {0.3, 1.0, 2.5}) {
    const auto q = MPParams::make(1.5, lambda);
    const auto s = q.support();
    const double mass = ts.integrate([&](double x) { return mp_density(q, x); }, s.lo, s.hi);
    CHECK(q.atom() + mass == doctest::Approx(1.0).epsilon(1e-8));
  }
  const auto m = meixner_measure(FreeMeixnerParams::make(1, 2, 1));
  CHECK(m.atom0 + total_mass(m) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("mode") {
  CHECK(mode(GFGParams::make(1, 1, 2)) == 0.0);
  CHECK_THROWS_AS(mode(GFGParams::make(1, 1, 3)), Error);
  try {
    mode(GFGParams::make(1, 1, 3));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnimodal);
  }
  for (const auto& p : parameter_grid()) {
    if (!(p.theta * (p.lambda - 1.0) < p.t)) continue;
    const auto s = support(p);
    const double x0 = mode(p);
    REQUIRE(x0 > s.lo);
    REQUIRE(x0 < s.hi);
    const double d = 1e-3 * s.width();
    CHECK(gfg_density(p, x0 - d) <= gfg_density(p, x0));
    CHECK(gfg_density(p, x0 + d) <= gfg_density(p, x0));
    // The finite-difference slope is positive left of the mode and negative right of it.
    int wrong = 0;
    for (int i = 1; i < 100; ++i) {
      for (double x : {s.lo + (x0 - s.lo) * i / 100.0, x0 + (s.hi - x0) * i / 100.0}) {
        const double h = std::min(1e-5 * s.width(), 0.25 * std::min(x - s.lo, s.hi - x));
        const double slope = gfg_density(p, x + h) - gfg_density(p, x - h);
        if ((x < x0) != (slope > 0)) ++wrong;
      }
    }
    CHECK(wrong == 0);
  }
}

TEST_CASE("structural predicates") {
  auto a = structural_predicates(GFGParams::make(1, 1, 1));
  CHECK((a.freely_selfdecomposable && a.unimodal && a.density_bounded));
  auto b = structural_predicates(GFGParams::make(1, 1, 2));
  CHECK((!b.freely_selfdecomposable && b.unimodal && !b.density_bounded));
  auto c = structural_predicates(GFGParams::make(1, 1, 3));
  CHECK((!c.freely_selfdecomposable && !c.unimodal && c.density_bounded));
}

TEST_CASE("distribution function") {
  const auto p = GFGParams::make(1, 1, 1);
  const auto s = support(p);
  const auto m = gfg_measure(p);
  CHECK(cdf(m, s.lo) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(cdf(m, s.hi) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cdf(gfg_measure(GFGParams::make(1, 1, 3)), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  double prev = -1.0;
  for (int i = 0; i <= 40; ++i) {
    const double x = s.lo - 0.5 + (s.width() + 1.0) * i / 40.0;
    const double f = cdf(m, x);
    CHECK(f >= prev - 1e-15);
    prev = f;
  }
}

TEST_CASE("tabulated distribution function") {
  for (const auto& p : {GFGParams::make(1, 1, 1), GFGParams::make(1, 1, 2), GFGParams::make(1, 1, 3)}) {
    const auto m = gfg_measure(p);
    const CdfTable serial(m, 256, ExecutionPolicy::serial);
    const CdfTable parallel(m, 256, ExecutionPolicy::parallel);
    CHECK(serial.cumulative() == parallel.cumulative());
    CHECK(serial.atom() + serial.ac_mass() == doctest::Approx(1.0).epsilon(1e-10));
    const auto s = support(p);
    for (int i = 1; i < 20; ++i) {
      const double x = s.lo + s.width() * i / 20.0;
      CHECK(serial(x) == doctest::Approx(cdf(m, x)).epsilon(1e-8));
      const double u = serial(x);
      if (u > serial.atom() + 1e-6) CHECK(serial.quantile(u) == doctest::Approx(x).epsilon(1e-8));
    }
    if (p.lambda == 3.0) {
      CHECK(serial(0.0) == doctest::Approx(0.5));
      CHECK(serial.left_limit(0.0) == 0.0);
    }
  }
}

TEST_CASE("dilation covariance") {
  const auto q = MPParams::make(1.0, 2.0);
  const auto base = mp_measure(q);
  const double c = 2.5;
  const auto scaled = dilate(base, c);
  const auto direct = mp_measure(MPParams::make(c, 2.0));
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(scaled.density_at(c * x) == doctest::Approx(base.density_at(x) / c).epsilon(1e-13));
    CHECK(direct.density_at(c * x) == doctest::Approx(base.density_at(x) / c).epsilon(1e-12));
  }
}
