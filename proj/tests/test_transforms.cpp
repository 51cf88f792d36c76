#include <doctest.h>

#include "freegamma/cumulants.hpp"
#include "freegamma/measures.hpp"
#include "freegamma/transforms.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace fg;

namespace {

const std::vector<GFGParams> kTriples{
    GFGParams::make(1, 1, 1),   GFGParams::make(1, 1, 2),     GFGParams::make(1, 1, 3),
    GFGParams::make(2, 0.5, 3), GFGParams::make(0.5, 2, 1.2), GFGParams::make(3, 1, 2.5),
    GFGParams::make(1, 2, 1.5), GFGParams::make(2, 1, 1),     GFGParams::make(0.7, 1.3, 1.4),
    GFGParams::make(1, 0.5, 1.5)};

}  // namespace

TEST_CASE("principal square root") {
  CHECK(std::abs(principal_sqrt(-1.0) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(principal_sqrt(Complex(0, 1)) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
  CHECK(std::abs(principal_sqrt(4.0) - 2.0) < 1e-15);
  CHECK(std::abs(principal_sqrt(Complex(4.0, 1e-12)) - 2.0) < 1e-12);
  CHECK(principal_sqrt(0.0) == Complex(0.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const Complex w(u(rng), u(rng));
    const Complex s = principal_sqrt(w);
    CHECK(s.imag() >= 0.0);
    CHECK(std::abs(s * s - w) < 1e-13 * std::max(1.0, std::abs(w)));
  }
}

TEST_CASE("Cauchy transform") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-5, 15), uy(1e-4, 10);
  for (const auto& p : kTriples) {
    for (int i = 0; i < 1000; ++i) CHECK(cauchy_transform(p, Complex(ux(rng), uy(rng))).imag() < 0.0);
    const Complex z(0, 1e6);
    CHECK(std::abs(z * cauchy_transform(p, z) - 1.0) < 1e-5);
  }
  CHECK_THROWS_AS(cauchy_transform(kTriples[0], Complex(1.0, 0.0)), Error);
  const double g = -cauchy_transform(kTriples[0], Complex(3.0, 1e-6)).imag() / std::numbers::pi;
  CHECK(g == doctest::Approx(std::sqrt(2.0) / (9.0 * std::numbers::pi)).epsilon(1e-5));
}

TEST_CASE("free Meixner Cauchy transform") {
  const Complex z(0.3, 0.7);
  CHECK(std::abs(meixner_cauchy(FreeMeixnerParams::make(0, 1, 1), z) - 1.0 / z) < 1e-15);

  const auto nu = FreeMeixnerParams::make(1, 2, 1);
  const auto s = meixner_support(nu);
  boost::math::quadrature::tanh_sinh<double> ts;
  const Complex w(0.0, 2.0);
  const double re = ts.integrate([&](double x) { return (1.0 / (w - x)).real() * meixner_density(nu, x); }, s.lo, s.hi);
  const double im = ts.integrate([&](double x) { return (1.0 / (w - x)).imag() * meixner_density(nu, x); }, s.lo, s.hi);
  CHECK(std::abs(meixner_cauchy(nu, w) - Complex(re, im)) < 1e-10);

  for (const auto& p : kTriples) {
    const auto shifted = FreeMeixnerParams::make(p.t * p.theta * p.lambda, p.theta * (p.lambda + 1.0), p.theta * p.theta * p.lambda);
    for (const auto& zz : upper_grid(-2, 12, {0.01, 0.5, 3}, 50).points)
      CHECK(std::abs(cauchy_transform(p, zz) - meixner_cauchy(shifted, zz - p.t)) < 1e-12);
  }
}

TEST_CASE("Stieltjes inversion") {
  SUBCASE("round trip against the density") {
    for (const auto& p : kTriples) {
      const auto s = support(p);
      auto G = [&](Complex z) { return cauchy_transform(p, z); };
      for (int i = 1; i <= 50; ++i) {
        const double x = s.lo + s.width() * (i - 0.5) / 50.0;
        CHECK(stieltjes_invert(G, x).value == doctest::Approx(gfg_density(p, x)).epsilon(1e-4).scale(1.0));
      }
    }
  }
  SUBCASE("off-support point mass") {
    auto G = [](Complex z) { return 1.0 / (z - 2.0); };
    CHECK(std::abs(stieltjes_invert(G, 0.0).value) < 1e-9);
  }
  SUBCASE("hard edge") {
    const auto p = GFGParams::make(1, 1, 2);
    const double x = 1e-4;
    InversionOptions opts;
    opts.ladder = {1e-7, 1e-8, 1e-9};
    const auto r = stieltjes_invert([&](Complex z) { return cauchy_transform(p, z); }, x, opts);
    CHECK(r.value > 10.0);
    CHECK(r.value == doctest::Approx(gfg_density(p, x)).epsilon(1e-4));
  }
}

TEST_CASE("R-transforms") {
  CHECK(std::abs(r_transform(rfam::Mp{MPParams::make(1, 1)}, -1.0) - (-0.5)) < 1e-15);
  CHECK_THROWS_AS(r_transform(rfam::Gfg{kTriples[0]}, Complex(-0.1, 0.1)), Error);
  try {
    r_transform(rfam::Gfg{kTriples[0]}, Complex(-0.1, 0.1));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BranchDomain);
  }
  SUBCASE("additivity in t") {
    for (const auto& z : {Complex(-0.3, 0), Complex(0.2, -0.5), Complex(-1, -2)}) {
      const auto a = r_transform(rfam::Gfg{GFGParams::make(0.5, 1.5, 2)}, z);
      const auto b = r_transform(rfam::Gfg{GFGParams::make(1.25, 1.5, 2)}, z);
      const auto c = r_transform(rfam::Gfg{GFGParams::make(1.75, 1.5, 2)}, z);
      CHECK(std::abs(a + b - c) < 1e-15);
    }
  }
  SUBCASE("ratio to z near zero") {
    const double z = -1e-9;
    CHECK(r_transform(rfam::Gfg{GFGParams::make(2, 0.5, 3)}, z).real() / z == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r_transform(rfam::Mp{MPParams::make(2, 3)}, z).real() / z == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(r_transform(rfam::Bdlp{1.5, 1}, z).real() / z == doctest::Approx(1.5).epsilon(1e-8));
  }
  SUBCASE("real points carry the limit from below") {
    for (const auto& p : kTriples) {
      for (double x = -3; x <= 6; x += 0.25) {
        const auto a = r_transform(rfam::Gfg{p}, Complex(x, -1e-14));
        const auto b = r_transform(rfam::Gfg{p}, Complex(x, 0.0));
        CHECK(std::abs(a - b) < 1e-5 * std::max(1.0, std::abs(a)));
      }
    }
  }
  SUBCASE("background driving process coefficients") {
    const auto germ = r_germ(rfam::Bdlp{1, 1});
    const auto c = series_oracle(germ.f, 4, germ.radius).coefficients;
    CHECK(c[0].real() == doctest::Approx(1.0));
    CHECK(c[1].real() == doctest::Approx(2.0));
    CHECK(c[2].real() == doctest::Approx(6.0));
    CHECK(c[3].real() == doctest::Approx(20.0));
  }
  SUBCASE("germs agree with the evaluated transforms on the negative axis") {
    for (const auto& p : kTriples) {
      const auto germ = r_germ(rfam::Gfg{p});
      for (double f : {0.1, 0.5, 0.9}) {
        const double z = -f * germ.radius;
        CHECK(std::abs(germ.f(z) - r_transform(rfam::Gfg{p}, z)) < 1e-13 * std::max(1.0, std::abs(germ.f(z))));
      }
    }
    for (double p : {0.2, 1.0, 4.0}) {
      const auto germ = r_germ(rfam::FreeBeta{p});
      const double lo = -p * p * p / (2.0 * (p + 1.0));
      for (double f : {0.1, 0.5, 0.9}) {
        const double z = f * std::max(lo, -0.9 * germ.radius);
        CHECK(std::abs(germ.f(z) - r_transform(rfam::FreeBeta{p}, z)) < 1e-12 * std::max(1.0, std::abs(germ.f(z))));
      }
    }
  }
  SUBCASE("Levy density of the driving process") {
    const double t = 1.3, theta = 0.8;
    boost::math::quadrature::tanh_sinh<double> ts;
    for (int i = 1; i <= 20; ++i) {
      const double z = -i / (20.0 * 8.0 * theta) + 1e-12;
      const double val = ts.integrate(
          [&](double x) { return z / (1.0 - z * x) * t / (std::numbers::pi * std::sqrt(x * (4.0 * theta - x))); }, 0.0,
          4.0 * theta);
      CHECK(r_transform(rfam::Bdlp{t, theta}, z).real() == doctest::Approx(val).epsilon(1e-6));
    }
  }
}

TEST_CASE("S-transforms") {
  CHECK(s_transform(sfam::Gfg{GFGParams::make(1, 1, 1)}, -0.5) == doctest::Approx(1.5));
  CHECK(s_transform(sfam::Mp{MPParams::make(1, 1)}, 0.0) == doctest::Approx(1.0));
  CHECK(s_transform(sfam::FreeBeta{1.0}, 0.0) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(s_transform(sfam::Gfg{GFGParams::make(1, 1, 3)}, -0.6), Error);
  CHECK_NOTHROW(s_transform(sfam::Gfg{GFGParams::make(1, 1, 3)}, -0.4));
  CHECK_THROWS_AS(s_transform(reversed(sfam::Mp{MPParams::make(1, 0.5)}), -0.2), Error);

  for (double theta : {0.5, 1.0, 3.0})
    for (double lambda : {1.0, 1.5, 4.0})
      for (double z : {-0.9, -0.5, -0.1}) {
        const auto q = MPParams::make(theta, lambda);
        CHECK(s_transform(reversed(sfam::Mp{q}), z) == doctest::Approx(theta * (lambda - 1.0 - z)).epsilon(1e-14));
        CHECK(s_transform(sfam::InverseMp{q}, z) == doctest::Approx(theta * (lambda - 1.0 - z)).epsilon(1e-14));
      }

  for (const auto& p : kTriples) {
    const double lo = -std::min(1.0, p.lambda > 1.0 ? p.q() : 1.0);
    for (int i = 1; i < 10; ++i) {
      const double z = lo * i / 10.0;
      const double zs = z * s_transform(sfam::Gfg{p}, z);
      const double closed = z * (p.theta * z - p.t) / (p.theta * p.t * (1.0 - p.lambda) * z - p.t * p.t);
      CHECK(zs == doctest::Approx(closed).epsilon(1e-14));
    }
  }
}

TEST_CASE("numeric S-transform") {
  CHECK(numeric_s_transform(gfg_measure(GFGParams::make(1, 1, 1)), -0.5) == doctest::Approx(1.5).epsilon(1e-7));
  CHECK(numeric_s_transform(mp_measure(MPParams::make(1, 1)), -0.5) == doctest::Approx(2.0).epsilon(1e-7));
  const auto narrow = narrow_measure(2.0, 1e-3);
  for (double z : {-0.8, -0.5, -0.2}) CHECK(numeric_s_transform(narrow, z) == doctest::Approx(0.5).epsilon(1e-6));
  for (const auto& p : kTriples) {
    const double lo = -1.0 + atom_mass(p);
    for (double f : {0.2, 0.5, 0.8}) {
      const double z = lo * f;
      CHECK(numeric_s_transform(gfg_measure(p), z) == doctest::Approx(s_transform(sfam::Gfg{p}, z)).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(numeric_s_transform(gfg_measure(GFGParams::make(1, 1, 3)), -0.7), Error);
}

TEST_CASE("R of z S(z) returns z") {
  CHECK(functional_identity_rs(GFGParams::make(1, 1, 1), -0.1) < 1e-12);
  CHECK(functional_identity_rs(GFGParams::make(2, 0.5, 3), -0.05) < 1e-12);
  CHECK(functional_identity_rs(MPParams::make(1, 2), -0.1) < 1e-12);
  for (const auto& p : kTriples)
    for (double z = -0.19; z < 0; z += 0.02) CHECK(functional_identity_rs(p, z) < 1e-12);
}
