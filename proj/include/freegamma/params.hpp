#pragma once

#include "freegamma/error.hpp"
#include "freegamma/numeric.hpp"

#include <string>

namespace fg {

struct SupportInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// The triple (t, theta, lambda) of the generalized free gamma family.
struct GFGParams {
  double t = 1.0;
  double theta = 1.0;
  double lambda = 1.0;

  /// Validating constructor: t > 0, theta > 0, lambda >= 1.
  static GFGParams make(double t, double theta, double lambda);

  /// lambda == 1, tested exactly.
  bool lambda_is_one() const { return lambda == 1.0; }
  /// lambda == 1 + t/theta, the compound-Poisson boundary.
  bool on_boundary() const { return theta * (lambda - 1.0) == t; }
  bool atomless() const { return theta * (lambda - 1.0) <= t; }
  bool unimodal() const { return atomless(); }
  bool freely_selfdecomposable() const { return lambda_is_one(); }
  /// t / (theta (lambda - 1)); requires lambda > 1.
  double q() const { return t / (theta * (lambda - 1.0)); }
  /// t (lambda - 1), the dilation scale of the beta-prime dictionary.
  double shift() const { return t * (lambda - 1.0); }

  std::string describe() const;
};

/// Exact counterpart used by the combinatorial and polynomial code.
struct ExactGFGParams {
  Rational t{1};
  Rational theta{1};
  Rational lambda{1};

  static ExactGFGParams make(const Rational& t, const Rational& theta, const Rational& lambda);
  static ExactGFGParams from(const GFGParams& p);
  GFGParams to_double() const;
};

/// Marchenko-Pastur law pi_{theta, lambda}.
struct MPParams {
  double theta = 1.0;
  double lambda = 1.0;

  static MPParams make(double theta, double lambda);
  double atom() const { return lambda < 1.0 ? 1.0 - lambda : 0.0; }
  SupportInterval support() const;
  std::string describe() const;
};

/// Centered free Meixner law nu_{s, a, b}.
struct FreeMeixnerParams {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;

  static FreeMeixnerParams make(double s, double a, double b);
};

void require_positive(double x, const char* name);

}  // namespace fg
