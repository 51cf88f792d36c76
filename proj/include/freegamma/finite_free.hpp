#pragma once

#include "freegamma/empirical.hpp"
#include "freegamma/numeric.hpp"
#include "freegamma/parallel.hpp"
#include "freegamma/params.hpp"

#include <string>
#include <variant>
#include <vector>

namespace fg {

/// x (x - 1) ... (x - n + 1); the empty product for n = 0.
template <class T>
T falling_factorial(const T& x, unsigned n) {
  T out(1);
  for (unsigned i = 0; i < n; ++i) out *= x - T(i);
  return out;
}

/// Monic polynomial of degree d stored through its normalized elementary
/// symmetric coefficients: p(x) = sum_k (-1)^k C(d,k) e_k x^{d-k}, e_0 = 1.
struct MonicPolynomial {
  int degree = 0;
  std::vector<Rational> e_tilde;

  static MonicPolynomial from_e_tilde(std::vector<Rational> e);
  static MonicPolynomial from_roots(const std::vector<Rational>& roots);

  /// Coefficients of x^d, x^{d-1}, ..., x^0.
  std::vector<Rational> coefficients() const;
  Rational evaluate(const Rational& x) const;
  std::string describe() const;
};

/// e_k = (bd)_k / (ad)_k.
MonicPolynomial jacobi_poly(const Rational& a, const Rational& b, int d);
/// e_k = d^k / (ad)_k.
MonicPolynomial bessel_poly(const Rational& a, int d);

namespace polyop {
/// x -> -x, renormalized to be monic.
struct Reflect {};
/// c^d p(x/c).
struct Dilate { Rational c; };
}  // namespace polyop

using PolyOp = std::variant<polyop::Reflect, polyop::Dilate>;

MonicPolynomial transform_poly(const MonicPolynomial& p, const PolyOp& op);

/// Degree-d polynomial whose root distribution approaches mu_{t,theta,lambda}:
/// a dilated reflected Jacobi polynomial for 1 < lambda <= 1 + t/theta, a
/// dilated reflected Bessel polynomial for lambda = 1.
MonicPolynomial build_p_d(const ExactGFGParams& p, int d);
MonicPolynomial build_p_d(const GFGParams& p, int d);

struct RootOptions {
  /// Working precision in bits; 0 picks 64 + 4d.
  int precision_bits = 0;
  int max_iterations = 500;
};

struct RootSet {
  std::vector<double> roots;
  /// Largest |p(z)| over the computed roots (at working precision).
  double residual_max = 0.0;
  /// Largest |coefficient| of p in the monomial basis.
  double coefficient_scale = 0.0;
  double min_gap = 0.0;
  /// min_gap > 1e-10 * span.
  bool distinct = false;
  double max_imaginary = 0.0;
  std::vector<std::string> warnings;
};

/// Eigenvalues of the balanced companion matrix as starting points, then
/// simultaneous Aberth-Ehrlich iteration in MPFR arithmetic. Sorted real parts
/// are returned; clusters that stop the iteration from converging are reported
/// as suspected multiple roots.
RootSet roots(const MonicPolynomial& p, const RootOptions& opts = {});

/// e_{k-1} / e_k, for 1 <= k <= d.
Rational finite_s_ratio_exact(const MonicPolynomial& p, int k);
double finite_s_ratio(const MonicPolynomial& p, int k);

EmpiricalDistribution root_distribution(const RootSet& r, int d);

struct ConvergenceRow {
  int d = 0;
  double w1 = 0.0;
  double ks = 0.0;
  double residual_max = 0.0;
};

struct ConvergenceStudy {
  GFGParams params;
  std::vector<ConvergenceRow> rows;
  /// w1 strictly decreases along the dims.
  bool w1_decreasing = false;
  /// The last w1 is the smallest.
  bool last_smallest = false;
};

ConvergenceStudy convergence_study(const GFGParams& p, const std::vector<int>& dims,
                                   ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace fg
