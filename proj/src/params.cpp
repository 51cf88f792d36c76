#include "freegamma/params.hpp"

#include "freegamma/error.hpp"

#include <cmath>

namespace fg {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorKind::InvalidParameters, std::string(name) + " must be a positive finite number, got " + shortest(x));
}

GFGParams GFGParams::make(double t, double theta, double lambda) {
  require_positive(t, "t");
  require_positive(theta, "theta");
  if (!(lambda >= 1.0) || !std::isfinite(lambda))
    fail(ErrorKind::InvalidParameters, "lambda must be >= 1, got " + shortest(lambda));
  return {t, theta, lambda};
}

std::string GFGParams::describe() const {
  return "t=" + shortest(t) + ",theta=" + shortest(theta) + ",lambda=" + shortest(lambda);
}

ExactGFGParams ExactGFGParams::make(const Rational& t, const Rational& theta, const Rational& lambda) {
  if (t <= 0) fail(ErrorKind::InvalidParameters, "t must be positive");
  if (theta <= 0) fail(ErrorKind::InvalidParameters, "theta must be positive");
  if (lambda < 1) fail(ErrorKind::InvalidParameters, "lambda must be >= 1");
  return {t, theta, lambda};
}

ExactGFGParams ExactGFGParams::from(const GFGParams& p) {
  return make(exact_rational(p.t), exact_rational(p.theta), exact_rational(p.lambda));
}

GFGParams ExactGFGParams::to_double() const {
  return GFGParams::make(fg::to_double(t), fg::to_double(theta), fg::to_double(lambda));
}

MPParams MPParams::make(double theta, double lambda) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  return {theta, lambda};
}

SupportInterval MPParams::support() const {
  const double r = std::sqrt(lambda);
  return {theta * (r - 1.0) * (r - 1.0), theta * (r + 1.0) * (r + 1.0)};
}

std::string MPParams::describe() const { return "theta=" + shortest(theta) + ",lambda=" + shortest(lambda); }

FreeMeixnerParams FreeMeixnerParams::make(double s, double a, double b) {
  if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorKind::InvalidParameters, "s must be >= 0");
  if (!std::isfinite(a)) fail(ErrorKind::InvalidParameters, "a must be finite");
  if (!(b >= -1.0) || !std::isfinite(b)) fail(ErrorKind::InvalidParameters, "b must be >= -1");
  return {s, a, b};
}

}  // namespace fg
