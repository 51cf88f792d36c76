#include "freegamma/measures.hpp"

#include "freegamma/error.hpp"
#include "freegamma/quadrature.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>

namespace fg {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kHalfPi = boost::math::constants::half_pi<double>();

GFGParams fbp_params(double a, double b) {
  require_positive(a, "a");
  if (!(b > 1.0)) fail(ErrorKind::InvalidParameters, "free beta prime requires b > 1");
  return GFGParams::make(a / (b - 1.0), a / ((b - 1.0) * (b - 1.0)), (a + b - 1.0) / a);
}

}  // namespace

SupportInterval support(const GFGParams& p) {
  const double center = p.theta * (p.lambda + 1.0) + p.t;
  const double hi = center + 2.0 * std::sqrt(p.theta * p.lambda * (p.theta + p.t));
  const double gap = p.theta * (p.lambda - 1.0) - p.t;
  // alpha^- alpha^+ = (theta(lambda-1) - t)^2 avoids cancellation in the lower edge.
  return {gap * gap / hi, hi};
}

double atom_mass(const GFGParams& p) {
  if (p.atomless()) return 0.0;
  return 1.0 - p.q();
}

double gfg_density(const GFGParams& p, double x) {
  const auto s = support(p);
  if (!(x > s.lo && x < s.hi)) return 0.0;
  return p.t * std::sqrt((x - s.lo) * (s.hi - x)) / (2.0 * kPi * p.theta * x * (x + p.shift()));
}

double mp_density(const MPParams& q, double x) {
  const auto s = q.support();
  if (!(x > s.lo && x < s.hi) || x <= 0.0) return 0.0;
  return std::sqrt((s.hi - x) * (x - s.lo)) / (2.0 * kPi * q.theta * x);
}

double levy_gfg_density(const GFGParams& p, double x) {
  if (x <= 0.0) return 0.0;
  return p.t * mp_density({p.theta, p.lambda}, x) / x;
}

double fbp_density(double a, double b, double x) { return gfg_density(fbp_params(a, b), x); }

double fbp_levy_density(double a, double b, double x) { return levy_gfg_density(fbp_params(a, b), x); }

double inverse_mp_density(const MPParams& q, double x) {
  if (!(q.lambda >= 1.0)) fail(ErrorKind::InvalidParameters, "reversed Marchenko-Pastur law needs lambda >= 1");
  if (x <= 0.0) return 0.0;
  return mp_density(q, 1.0 / x) / (x * x);
}

SupportInterval meixner_support(const FreeMeixnerParams& m) {
  const double r = 2.0 * std::sqrt(std::max(m.s + m.b, 0.0));
  return {m.a - r, m.a + r};
}

double meixner_density(const FreeMeixnerParams& m, double x) {
  const double disc = 4.0 * (m.s + m.b) - (x - m.a) * (x - m.a);
  if (!(disc > 0.0)) return 0.0;
  const double den = m.b * x * x + m.s * m.a * x + m.s * m.s;
  return m.s * std::sqrt(disc) / (2.0 * kPi * den);
}

double density(const DensityFamily& fam, double x) {
  return std::visit(
      [x](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Gfg>) return gfg_density(f.p, x);
        else if constexpr (std::is_same_v<F, family::Mp>) return mp_density(f.q, x);
        else if constexpr (std::is_same_v<F, family::LevyGfg>) return levy_gfg_density(f.p, x);
        else if constexpr (std::is_same_v<F, family::Fbp>) return fbp_density(f.a, f.b, x);
        else if constexpr (std::is_same_v<F, family::FbpLevy>) return fbp_levy_density(f.a, f.b, x);
        else return inverse_mp_density(f.q, x);
      },
      fam);
}

double mode_cubic(const GFGParams& p, double x) {
  const auto s = support(p);
  const double sum = s.lo + s.hi;
  const double prod = s.lo * s.hi;
  const double c = p.shift();
  return 2.0 * x * x * x - 3.0 * sum * x * x + (4.0 * prod - c * sum) * x + 2.0 * prod * c;
}

double mode(const GFGParams& p) {
  if (!p.unimodal()) fail(ErrorKind::NotUnimodal, "mu is not unimodal for lambda > 1 + t/theta (" + p.describe() + ")");
  if (p.on_boundary()) return 0.0;
  const auto s = support(p);
  double lo = s.lo;
  double hi = s.hi;
  const double tol = 1e-12 * s.width();
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mode_cubic(p, mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

StructuralPredicates structural_predicates(const GFGParams& p) {
  return {p.freely_selfdecomposable(), p.unimodal(), !p.on_boundary()};
}

SpectralMeasure gfg_measure(const GFGParams& p) {
  return {atom_mass(p), [p](double x) { return gfg_density(p, x); }, support(p), "mu(" + p.describe() + ")"};
}

SpectralMeasure mp_measure(const MPParams& q) {
  return {q.atom(), [q](double x) { return mp_density(q, x); }, q.support(), "pi(" + q.describe() + ")"};
}

SpectralMeasure inverse_mp_measure(const MPParams& q) {
  if (!(q.lambda > 1.0)) fail(ErrorKind::InvalidParameters, "compact reversed Marchenko-Pastur law needs lambda > 1");
  const auto s = q.support();
  return {0.0, [q](double x) { return inverse_mp_density(q, x); }, {1.0 / s.hi, 1.0 / s.lo},
          "reversed pi(" + q.describe() + ")"};
}

SpectralMeasure meixner_measure(const FreeMeixnerParams& m) {
  if (!(m.s + m.b > 0.0)) fail(ErrorKind::InvalidParameters, "free Meixner law with s + b <= 0 has no absolutely continuous part");
  return {0.0, [m](double x) { return meixner_density(m, x); }, meixner_support(m), "free Meixner"};
}

SpectralMeasure narrow_measure(double c, double width) {
  require_positive(width, "width");
  return {0.0,
          [c, width](double x) {
            const double r = width * width - (x - c) * (x - c);
            return r > 0.0 ? 2.0 * std::sqrt(r) / (kPi * width * width) : 0.0;
          },
          {c - width, c + width},
          "semicircle"};
}

SpectralMeasure dilate(const SpectralMeasure& m, double c) {
  require_positive(c, "dilation factor");
  auto f = m.density;
  return {m.atom0, [f, c](double x) { return f(x / c) / c; }, {c * m.support.lo, c * m.support.hi},
          "D_" + shortest(c) + "(" + m.label + ")"};
}

SpectralMeasure translate(const SpectralMeasure& m, double s) {
  if (m.atom0 != 0.0) fail(ErrorKind::Domain, "translating a measure with an atom at 0 is not representable");
  auto f = m.density;
  return {0.0, [f, s](double x) { return f(x - s); }, {m.support.lo + s, m.support.hi + s},
          "(" + m.label + ")+" + shortest(s)};
}

double total_mass(const SpectralMeasure& m, double tol) {
  auto r = integrate_arcsine(m.density, m.support.lo, m.support.hi, tol);
  require_accuracy(r, 1e-9, "total mass");
  return r.value;
}

double cdf(const SpectralMeasure& m, double x, double tol) {
  const double atom = x >= 0.0 ? m.atom0 : 0.0;
  if (x <= m.support.lo) return atom;
  const double upper = std::min(x, m.support.hi);
  auto r = integrate_arcsine(m.density, m.support.lo, upper, tol);
  require_accuracy(r, 1e-9, "cdf");
  return atom + r.value;
}

double moment_by_quadrature(const SpectralMeasure& m, int n, double tol) {
  auto r = integrate_arcsine([&](double x) { return std::pow(x, n) * m.density(x); }, m.support.lo, m.support.hi, tol);
  require_accuracy(r, 1e-9 * std::max(1.0, std::abs(r.value)), "moment");
  return r.value + (n == 0 ? m.atom0 : 0.0);
}

CdfTable::CdfTable(const SpectralMeasure& m, std::size_t segments, ExecutionPolicy policy)
    : atom_(m.atom0), support_(m.support) {
  if (segments < 2) fail(ErrorKind::InvalidParameters, "cdf table needs at least two segments");
  center_ = 0.5 * (support_.lo + support_.hi);
  half_ = 0.5 * support_.width();
  step_ = 2.0 * kHalfPi / static_cast<double>(segments);
  const auto f = m.density;
  const double lo = support_.lo;
  const double hi = support_.hi;
  auto g = [f, lo, hi](double u) {
    const auto p = arcsine_point(lo, hi, u);
    return f(p.x) * p.jacobian;
  };

  slope_ = map_indices(policy, segments + 1, [&](std::size_t k) {
    double u = -kHalfPi + static_cast<double>(k) * step_;
    // The endpoints themselves may be singular points of the density; the
    // transformed integrand has a finite limit there.
    if (k == 0) u += 1e-9 * step_;
    if (k == segments) u -= 1e-9 * step_;
    const double v = g(u);
    return std::isfinite(v) ? v : 0.0;
  });
  auto pieces = map_indices(policy, segments, [&](std::size_t k) {
    const double a = -kHalfPi + static_cast<double>(k) * step_;
    const double b = k + 1 == segments ? kHalfPi : a + step_;
    auto r = integrate_gk(g, a, b, 1e-14, 8);
    return r.value;
  });
  cumulative_.assign(segments + 1, 0.0);
  for (std::size_t k = 0; k < segments; ++k) cumulative_[k + 1] = cumulative_[k] + pieces[k];
}

double CdfTable::ac_part(double x) const {
  if (x <= support_.lo) return 0.0;
  if (x >= support_.hi) return cumulative_.back();
  const double u = arcsine_parameter(support_.lo, support_.hi, x) + kHalfPi;
  const std::size_t n = cumulative_.size() - 1;
  std::size_t k = std::min(static_cast<std::size_t>(u / step_), n - 1);
  const double s = (u - static_cast<double>(k) * step_) / step_;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const double v = h00 * cumulative_[k] + h10 * step_ * slope_[k] + h01 * cumulative_[k + 1] +
                   h11 * step_ * slope_[k + 1];
  return std::clamp(v, cumulative_[k], cumulative_[k + 1]);
}

double CdfTable::operator()(double x) const { return (x >= 0.0 ? atom_ : 0.0) + ac_part(x); }

double CdfTable::left_limit(double x) const { return (x > 0.0 ? atom_ : 0.0) + ac_part(x); }

double CdfTable::quantile(double prob) const {
  double lo = std::min(support_.lo, 0.0);
  double hi = support_.hi;
  if (prob <= (*this)(lo)) return lo;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < prob) lo = mid;
    else hi = mid;
  }
  return hi;
}

}  // namespace fg
