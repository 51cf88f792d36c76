#pragma once

#include "freegamma/parallel.hpp"

#include <functional>
#include <string>

namespace fg {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

using RealFn = std::function<double(double)>;
/// Integrand that also receives the exact distance from x to the nearest
/// endpoint of the integration interval (useful when the integrand is
/// singular there and x itself cannot resolve the gap).
using RealFnDist = std::function<double(double, double)>;

/// Adaptive 31-point Gauss-Kronrod.
QuadResult integrate_gk(const RealFn& f, double a, double b, double tol = 1e-12, unsigned max_depth = 20);

/// Double-exponential (tanh-sinh) rule on a finite interval.
QuadResult integrate_tanh_sinh(const RealFn& f, double a, double b, double tol = 1e-12);
QuadResult integrate_tanh_sinh(const RealFnDist& f, double a, double b, double tol = 1e-12);

/// Exp-sinh rule on [a, inf).
QuadResult integrate_half_line(const RealFn& f, double a, double tol = 1e-12);

/// Integral over [lo, hi] after the substitution x = c + h sin(u). Densities
/// with square-root or inverse-square-root edges become smooth in u.
QuadResult integrate_arcsine(const RealFn& f, double lo, double hi, double tol = 1e-12);

/// Point x = c + h sin(u) of the arcsine substitution on [lo, hi] and the
/// Jacobian dx/du, both computed from the distance to the nearer endpoint so
/// that nodes next to an edge keep full relative precision.
struct ArcsinePoint {
  double x;
  double jacobian;
};
ArcsinePoint arcsine_point(double lo, double hi, double u);
/// Inverse map x -> u in [-pi/2, pi/2].
double arcsine_parameter(double lo, double hi, double x);

/// Level-refined tanh-sinh rule whose node evaluations are independent tasks.
/// Summation is pairwise in node order, so both policies agree bit for bit.
QuadResult integrate_tanh_sinh_nodes(const RealFnDist& f, double a, double b, double tol,
                                     ExecutionPolicy policy, int max_levels = 9);

/// Throws a quadrature-failure error when the estimate exceeds `tol`.
void require_accuracy(const QuadResult& r, double tol, const std::string& what);

}  // namespace fg
