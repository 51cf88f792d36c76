#include "freegamma/transforms.hpp"

#include "freegamma/error.hpp"
#include "freegamma/quadrature.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>

namespace fg {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

void require_lower_closed(Complex z, const char* what) {
  if (z.imag() > 0.0)
    fail(ErrorKind::BranchDomain, std::string(what) + " R-transform is evaluated on the closed lower half-plane");
}

Complex sqrt_lower(Complex w, Complex dw, Complex z) {
  if (z.imag() < 0.0) return principal_sqrt(w);
  return boundary_sqrt(w.real(), dw.real(), Side::lower);
}

double free_beta_lower(double p) { return -p * p * p / (2.0 * (p + 1.0)); }

}  // namespace

Complex principal_sqrt(Complex w) {
  if (w == Complex(0.0, 0.0)) return {0.0, 0.0};
  // std::sqrt has its cut on the negative reals with Re >= 0; flipping into
  // the closed upper half-plane gives arg in (0, 2pi) with the cut moved to
  // the positive reals. Signed zeros make both rims of the negative axis
  // land on +i sqrt|w|.
  Complex s = std::sqrt(w);
  if (s.imag() < 0.0) s = -s;
  return {s.real(), s.imag() == 0.0 ? 0.0 : s.imag()};
}

Complex boundary_sqrt(double w, double dw, Side side) {
  if (w > 0.0) {
    const double r = std::sqrt(w);
    return static_cast<int>(side) * dw >= 0.0 ? Complex(r, 0.0) : Complex(-r, 0.0);
  }
  return {0.0, std::sqrt(-w)};
}

TransformGrid real_grid(double lo, double hi, std::size_t n) {
  TransformGrid g{{}, Region::negative_real_segment};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
    g.points.emplace_back(lo + s * (hi - lo), 0.0);
  }
  return g;
}

TransformGrid upper_grid(double xlo, double xhi, std::vector<double> heights, std::size_t n) {
  TransformGrid g{{}, Region::upper_half_plane};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
    g.points.emplace_back(xlo + s * (xhi - xlo), heights[i % heights.size()]);
  }
  return g;
}

Complex cauchy_transform(const GFGParams& p, Complex z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::Domain, "Cauchy transform is evaluated on the open upper half-plane");
  const auto s = support(p);
  const Complex root = principal_sqrt((z - s.lo) * (z - s.hi));
  const Complex num = (p.t + 2.0 * p.theta) * z - p.t * (p.t - p.theta * (p.lambda - 1.0)) - p.t * root;
  return num / (2.0 * p.theta * z * (z + p.shift()));
}

Complex meixner_cauchy(const FreeMeixnerParams& m, Complex z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::Domain, "Cauchy transform is evaluated on the open upper half-plane");
  if (m.s == 0.0) return 1.0 / z;
  const Complex root = principal_sqrt((z - m.a) * (z - m.a) - 4.0 * (m.s + m.b));
  const Complex num = (m.s + 2.0 * m.b) * z + m.s * m.a - m.s * root;
  return num / (2.0 * (m.b * z * z + m.s * m.a * z + m.s * m.s));
}

InversionResult stieltjes_invert(const std::function<Complex(Complex)>& G, double x, const InversionOptions& opts) {
  const auto& eps = opts.ladder;
  if (eps.size() < 2) fail(ErrorKind::InvalidParameters, "Stieltjes inversion needs at least two ladder values");
  std::vector<double> f;
  for (double e : eps) f.push_back(-G(Complex(x, e)).imag() / kPi);
  const double r = eps[0] / eps[1];
  std::vector<double> level1;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) level1.push_back((r * f[i + 1] - f[i]) / (r - 1.0));
  InversionResult out;
  if (level1.size() == 1) {
    out.value = level1[0];
    out.error = std::abs(level1[0] - f.back());
  } else {
    const std::size_t k = level1.size();
    out.value = (r * r * level1[k - 1] - level1[k - 2]) / (r * r - 1.0);
    out.error = std::abs(level1[k - 1] - level1[k - 2]);
  }
  if (!(out.error <= opts.tol * std::max(1.0, std::abs(out.value)))) {
    std::ostringstream msg;
    msg << "Stieltjes inversion at x=" << x << " did not settle: successive extrapolants differ by " << out.error;
    fail(ErrorKind::NonConvergence, msg.str(), out.error);
  }
  return out;
}

Complex r_gfg_unit(double theta, double lambda, Complex z) {
  require_lower_closed(z, "generalized free gamma");
  const double a = theta * (1.0 - lambda);
  const Complex u = 1.0 + a * z;
  const Complex w = u * u - 4.0 * theta * z;
  const Complex root = sqrt_lower(w, 2.0 * a * u - 4.0 * theta, z);
  // (u - root)/(2 theta) rewritten without the cancellation near z = 0.
  return 2.0 * z / (u + root);
}

Complex r_transform(const RFamily& fam, Complex z) {
  return std::visit(
      [z](const auto& f) -> Complex {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, rfam::Gfg>) {
          return f.p.t * r_gfg_unit(f.p.theta, f.p.lambda, z);
        } else if constexpr (std::is_same_v<F, rfam::Mp>) {
          require_lower_closed(z, "Marchenko-Pastur");
          return f.q.theta * f.q.lambda * z / (1.0 - f.q.theta * z);
        } else if constexpr (std::is_same_v<F, rfam::Bdlp>) {
          require_lower_closed(z, "background driving process");
          const Complex w = 1.0 - 4.0 * f.theta * z;
          return f.t * z / sqrt_lower(w, -4.0 * f.theta, z);
        } else {
          const double p = f.p;
          require_positive(p, "p");
          if (z.imag() != 0.0 || !(z.real() > free_beta_lower(p) && z.real() < 0.0)) {
            std::ostringstream msg;
            msg << "free beta R-transform is defined on (" << free_beta_lower(p) << ", 0)";
            fail(ErrorKind::Domain, msg.str());
          }
          const double x = z.real();
          const double k = (3.0 * p + 2.0) * (3.0 * p + 2.0);
          const double w = k * x * x - 2.0 * std::pow(p, 5) * x + std::pow(p, 8);
          const double dw = 2.0 * k * x - 2.0 * std::pow(p, 5);
          const Complex root = boundary_sqrt(w, dw, Side::upper);
          // (p(z - p^3) - root)/(2z) after multiplying through by the conjugate.
          return x * (p * p - k) / (2.0 * (p * (x - p * p * p) + root));
        }
      },
      fam);
}

AnalyticGerm r_germ(const RFamily& fam) {
  return std::visit(
      [](const auto& f) -> AnalyticGerm {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, rfam::Gfg>) {
          const double t = f.p.t;
          const double theta = f.p.theta;
          const double a = theta * (1.0 - f.p.lambda);
          // w(z) = (1 + a z)^2 - 4 theta z = (1 - z/z1)(1 - z a^2 z1), both roots positive.
          const double z1 = 2.0 / (4.0 * theta - 2.0 * a + 4.0 * theta * std::sqrt(f.p.lambda));
          const double inv_z2 = a * a * z1;
          return {[=](Complex z) {
                    const Complex root = std::sqrt(1.0 - z / z1) * std::sqrt(1.0 - z * inv_z2);
                    return t * 2.0 * z / (1.0 + a * z + root);
                  },
                  z1};
        } else if constexpr (std::is_same_v<F, rfam::Mp>) {
          const double th = f.q.theta;
          const double la = f.q.lambda;
          return {[=](Complex z) { return th * la * z / (1.0 - th * z); }, 1.0 / th};
        } else if constexpr (std::is_same_v<F, rfam::Bdlp>) {
          const double t = f.t;
          const double th = f.theta;
          return {[=](Complex z) { return t * z / std::sqrt(1.0 - 4.0 * th * z); }, 1.0 / (4.0 * th)};
        } else {
          const double p = f.p;
          const double k = (3.0 * p + 2.0) * (3.0 * p + 2.0);
          const double p4 = std::pow(p, 4);
          const Complex z1 = p4 * Complex(p, 2.0 * std::sqrt((p + 1.0) * (2.0 * p + 1.0))) / k;
          return {[=](Complex z) {
                    const Complex g = std::sqrt(1.0 - z / z1) * std::sqrt(1.0 - z / std::conj(z1));
                    return z * (p * p - k) / (2.0 * (p * (z - p * p * p) - p4 * g));
                  },
                  std::abs(z1)};
        }
      },
      fam);
}

SFamily reversed(SFamily base) { return std::make_shared<sfam::Reversed>(sfam::Reversed{std::move(base)}); }

SFamily dilated(double c, SFamily base) {
  require_positive(c, "dilation factor");
  return std::make_shared<sfam::Dilated>(sfam::Dilated{c, std::move(base)});
}

double s_domain_lower(const SFamily& fam) {
  return std::visit(
      [](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, sfam::Gfg>) return -1.0 + atom_mass(f.p);
        else if constexpr (std::is_same_v<F, sfam::Mp>) return -1.0 + f.q.atom();
        else if constexpr (std::is_same_v<F, sfam::InverseMp>) return -1.0;
        else if constexpr (std::is_same_v<F, sfam::Fbp>) return -std::min(1.0, f.a);
        else if constexpr (std::is_same_v<F, sfam::FreeBeta>) return -1.0;
        else if constexpr (std::is_same_v<F, std::shared_ptr<sfam::Reversed>>) return -1.0;
        else return s_domain_lower(f->base);
      },
      fam);
}

namespace {

double s_raw(const SFamily& fam, double z) {
  return std::visit(
      [z](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, sfam::Gfg>) {
          const auto& p = f.p;
          return (p.t - p.theta * z) / (p.t * (p.t + p.theta * (p.lambda - 1.0) * z));
        } else if constexpr (std::is_same_v<F, sfam::Mp>) {
          return 1.0 / (f.q.theta * (f.q.lambda + z));
        } else if constexpr (std::is_same_v<F, sfam::InverseMp>) {
          if (!(f.q.lambda >= 1.0)) fail(ErrorKind::InvalidParameters, "reversed Marchenko-Pastur law needs lambda >= 1");
          return f.q.theta * (f.q.lambda - 1.0 - z);
        } else if constexpr (std::is_same_v<F, sfam::Fbp>) {
          require_positive(f.a, "a");
          if (!(f.b > 1.0)) fail(ErrorKind::InvalidParameters, "free beta prime requires b > 1");
          return (f.b - 1.0 - z) / (f.a + z);
        } else if constexpr (std::is_same_v<F, sfam::FreeBeta>) {
          const double p = f.p;
          require_positive(p, "p");
          return std::pow(p, 4) / ((1.0 + p + z) * (2.0 * p + 1.0 - z));
        } else if constexpr (std::is_same_v<F, std::shared_ptr<sfam::Reversed>>) {
          if (s_domain_lower(f->base) != -1.0)
            fail(ErrorKind::Domain, "the reversed measure needs a base law without an atom at 0");
          return 1.0 / s_raw(f->base, -z - 1.0);
        } else {
          return s_raw(f->base, z) / f->c;
        }
      },
      fam);
}

}  // namespace

double s_transform(const SFamily& fam, double z) {
  const double lower = s_domain_lower(fam);
  if (!(z > lower && z <= 0.0)) {
    std::ostringstream msg;
    msg << "S-transform argument " << z << " outside (" << lower << ", 0]";
    fail(ErrorKind::Domain, msg.str());
  }
  return s_raw(fam, z);
}

std::pair<double, double> psi_transform(const SpectralMeasure& m, double u, double tol) {
  auto psi = integrate_arcsine([&](double x) { return u * x / (1.0 - u * x) * m.density(x); }, m.support.lo, m.support.hi, tol);
  auto dpsi = integrate_arcsine(
      [&](double x) {
        const double d = 1.0 - u * x;
        return x / (d * d) * m.density(x);
      },
      m.support.lo, m.support.hi, tol);
  require_accuracy(psi, 1e-10, "Psi transform");
  return {psi.value, dpsi.value};
}

double numeric_s_transform(const SpectralMeasure& m, double z, const NumericSOptions& opts) {
  if (m.support.lo < 0.0) fail(ErrorKind::Domain, "numeric S-transform needs a measure on [0, inf)");
  const double lower = -1.0 + m.atom0;
  if (!(z > lower && z < 0.0)) {
    std::ostringstream msg;
    msg << "S-transform argument " << z << " outside (" << lower << ", 0)";
    fail(ErrorKind::Domain, msg.str());
  }
  auto psi = [&](double u) { return psi_transform(m, u, opts.quad_tol); };

  // Psi increases from -(1 - atom) at -inf to 0 at 0; bracket the solution.
  double hi = 0.0;
  double lo = -1.0 / std::max(m.support.hi, 1e-300);
  int expansions = 0;
  double psi_lo = psi(lo).first;
  while (psi_lo > z) {
    hi = lo;
    lo *= 2.0;
    psi_lo = psi(lo).first;
    if (++expansions > 200) {
      std::ostringstream msg;
      msg << "could not bracket Psi^{-1}(" << z << "): Psi(" << lo << ") = " << psi_lo;
      fail(ErrorKind::InversionFailure, msg.str(), psi_lo - z);
    }
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iterations; ++it) {
    auto [value, slope] = psi(u);
    const double g = value - z;
    if (g > 0.0) hi = u;
    else lo = u;
    double next = u - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step <= opts.solve_tol * std::abs(u) || hi - lo <= opts.solve_tol * std::abs(u)) return (1.0 + z) / z * u;
  }
  std::ostringstream msg;
  msg << "Psi inversion did not converge; bracket [" << lo << ", " << hi << "]";
  fail(ErrorKind::InversionFailure, msg.str(), hi - lo);
}

double functional_identity_rs(const GFGParams& p, double z) {
  const double zs = z * s_transform(sfam::Gfg{p}, z);
  return std::abs(r_transform(rfam::Gfg{p}, Complex(zs, 0.0)) - z);
}

double functional_identity_rs(const MPParams& q, double z) {
  const double zs = z * s_transform(sfam::Mp{q}, z);
  return std::abs(r_transform(rfam::Mp{q}, Complex(zs, 0.0)) - z);
}

}  // namespace fg
