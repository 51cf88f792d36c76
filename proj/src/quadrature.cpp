#include "freegamma/quadrature.hpp"

#include "freegamma/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fg {

namespace {

constexpr double kHalfPi = boost::math::constants::half_pi<double>();

boost::math::quadrature::tanh_sinh<double>& tanh_sinh_instance() {
  thread_local boost::math::quadrature::tanh_sinh<double> instance;
  return instance;
}

boost::math::quadrature::exp_sinh<double>& exp_sinh_instance() {
  thread_local boost::math::quadrature::exp_sinh<double> instance;
  return instance;
}

}  // namespace

QuadResult integrate_gk(const RealFn& f, double a, double b, double tol, unsigned max_depth) {
  QuadResult r;
  if (a == b) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &r.error);
  return r;
}

QuadResult integrate_tanh_sinh(const RealFn& f, double a, double b, double tol) {
  QuadResult r;
  if (a == b) return r;
  r.value = tanh_sinh_instance().integrate(f, a, b, tol, &r.error);
  return r;
}

QuadResult integrate_tanh_sinh(const RealFnDist& f, double a, double b, double tol) {
  return integrate_tanh_sinh_nodes(f, a, b, tol, ExecutionPolicy::serial);
}

QuadResult integrate_half_line(const RealFn& f, double a, double tol) {
  QuadResult r;
  r.value = exp_sinh_instance().integrate(f, a, std::numeric_limits<double>::infinity(), tol, &r.error);
  return r;
}

ArcsinePoint arcsine_point(double lo, double hi, double u) {
  const double h = 0.5 * (hi - lo);
  if (u < 0.0) {
    const double v = u + kHalfPi;
    const double s = std::sin(0.5 * v);
    return {lo + 2.0 * h * s * s, h * std::sin(v)};
  }
  const double w = kHalfPi - u;
  const double s = std::sin(0.5 * w);
  return {hi - 2.0 * h * s * s, h * std::sin(w)};
}

double arcsine_parameter(double lo, double hi, double x) {
  const double h = 0.5 * (hi - lo);
  const double c = 0.5 * (lo + hi);
  if (x <= c) return -kHalfPi + 2.0 * std::asin(std::sqrt(std::clamp((x - lo) / (2.0 * h), 0.0, 1.0)));
  return kHalfPi - 2.0 * std::asin(std::sqrt(std::clamp((hi - x) / (2.0 * h), 0.0, 1.0)));
}

QuadResult integrate_arcsine(const RealFn& f, double lo, double hi, double tol) {
  if (hi <= lo) return {};
  auto g = [&](double u) {
    const auto p = arcsine_point(lo, hi, u);
    return f(p.x) * p.jacobian;
  };
  return integrate_gk(g, -kHalfPi, kHalfPi, tol, 15);
}

QuadResult integrate_tanh_sinh_nodes(const RealFnDist& f, double a, double b, double tol,
                                     ExecutionPolicy policy, int max_levels) {
  if (a == b) return {};
  const double half = 0.5 * (b - a);
  constexpr double t_max = 4.0;

  // Weight (without the step h) and abscissa for parameter t.
  auto contribution = [&](double t) {
    const double s = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(s));
    const double dist = half * 2.0 * e / (1.0 + e);
    const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    const double w = half * kHalfPi * std::cosh(t) * sech2;
    if (w == 0.0 || dist == 0.0) return 0.0;
    const double x = t < 0 ? a + dist : b - dist;
    return w * f(x, dist);
  };

  auto level_terms = [&](int level) {
    std::vector<double> ts;
    if (level == 0) {
      for (int k = -4; k <= 4; ++k) ts.push_back(k);
    } else {
      const double h = std::ldexp(1.0, -level);
      const int kmax = static_cast<int>(t_max / h);
      for (int k = -kmax; k <= kmax; ++k)
        if (k % 2 != 0) ts.push_back(k * h);
    }
    auto values = map_indices(policy, ts.size(), [&](std::size_t i) { return contribution(ts[i]); });
    return pairwise_sum(values);
  };

  double sum = level_terms(0);
  double estimate = sum;
  double error = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_levels; ++level) {
    sum += level_terms(level);
    const double next = sum * std::ldexp(1.0, -level);
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && error <= tol * std::max(std::abs(estimate), 1e-300)) break;
  }
  if (!std::isfinite(estimate)) fail(ErrorKind::QuadratureFailure, "tanh-sinh rule produced a non-finite value");
  return {estimate, error};
}

void require_accuracy(const QuadResult& r, double tol, const std::string& what) {
  if (!std::isfinite(r.value) || !(r.error <= tol)) {
    std::ostringstream msg;
    msg << what << ": quadrature error estimate " << r.error << " exceeds " << tol;
    fail(ErrorKind::QuadratureFailure, msg.str(), r.error);
  }
}

}  // namespace fg
