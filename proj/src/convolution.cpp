#include "freegamma/convolution.hpp"

#include "freegamma/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fg {

ExactGFGParams map_eta(const Rational& t, const Rational& theta) {
  return ExactGFGParams::make(t * theta, theta, Rational(1));
}

ExactGFGParams map_fbp_to_gfg(const Rational& a, const Rational& b) {
  if (a <= 0) fail(ErrorKind::Domain, "free beta prime needs a > 0");
  if (b <= 1) fail(ErrorKind::Domain, "free beta prime needs b > 1");
  const Rational bm1 = b - 1;
  return ExactGFGParams::make(a / bm1, a / (bm1 * bm1), (a + b - 1) / a);
}

Scaled<ExactFbpParams> map_gfg_to_fbp(const ExactGFGParams& p) {
  if (p.lambda <= 1) fail(ErrorKind::Domain, "the beta prime dictionary needs lambda > 1");
  const Rational shift = p.t * (p.lambda - 1);
  return {shift, {p.t / (p.theta * (p.lambda - 1)), 1 + p.t / p.theta}};
}

Scaled<ExactGFGParams> map_reversed(const ExactGFGParams& p) {
  const Rational lm1 = p.lambda - 1;
  const Rational gap = p.t - p.theta * lm1;
  if (lm1 <= 0 || gap <= 0)
    fail(ErrorKind::Domain, "the reversal map is defined for 1 < lambda < 1 + t/theta");
  const Rational tp = (p.theta + p.t) * lm1 / gap;
  const Rational thetap = p.theta * (p.theta + p.t) * lm1 * lm1 / (gap * gap);
  const Rational lambdap = p.t * p.lambda / ((p.theta + p.t) * lm1);
  return {1 / (p.t * lm1), ExactGFGParams::make(tp, thetap, lambdap)};
}

ExactMPParams map_inverse_mp_of_gfg1(const ExactGFGParams& p) {
  if (p.lambda != 1) fail(ErrorKind::Domain, "the reversed Marchenko-Pastur form holds at lambda = 1");
  return {p.theta / (p.t * p.t), 1 + p.t / p.theta};
}

InverseSumMap map_inverse_sum(const Rational& p, unsigned n) {
  if (p <= 0) fail(ErrorKind::Domain, "p must be positive");
  if (n < 1 || n > 60) fail(ErrorKind::Domain, "n must lie in [1, 60]");
  const Rational two_n = Rational(Integer(1) << n);
  const Rational c = two_n + (two_n - 1) / p;
  return {1 / (c * c), two_n * p + two_n - 1};
}

ExactGFGParams dilate(const ExactGFGParams& p, const Rational& c) {
  if (c <= 0) fail(ErrorKind::Domain, "dilation factor must be positive");
  return ExactGFGParams::make(c * p.t, c * p.theta, p.lambda);
}

GFGParams dilate(const GFGParams& p, double c) {
  require_positive(c, "dilation factor");
  return GFGParams::make(c * p.t, c * p.theta, p.lambda);
}

ParamMapResult map_params(std::string_view kind, const std::vector<Rational>& args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      std::ostringstream msg;
      msg << "map '" << kind << "' takes " << k << " arguments, got " << args.size();
      fail(ErrorKind::InvalidParameters, msg.str());
    }
  };
  auto gfg_values = [](const ExactGFGParams& p) {
    return std::vector<std::pair<std::string, Rational>>{{"t", p.t}, {"theta", p.theta}, {"lambda", p.lambda}};
  };
  if (kind == "eta") {
    need(2);
    return {"gfg", 1, gfg_values(map_eta(args[0], args[1]))};
  }
  if (kind == "fbp_to_gfg") {
    need(2);
    return {"gfg", 1, gfg_values(map_fbp_to_gfg(args[0], args[1]))};
  }
  if (kind == "gfg_to_fbp") {
    need(3);
    const auto r = map_gfg_to_fbp(ExactGFGParams::make(args[0], args[1], args[2]));
    return {"fbp", r.scale, {{"a", r.params.a}, {"b", r.params.b}}};
  }
  if (kind == "reversed") {
    need(3);
    const auto r = map_reversed(ExactGFGParams::make(args[0], args[1], args[2]));
    return {"gfg", r.scale, gfg_values(r.params)};
  }
  if (kind == "inverse_mp_of_gfg1") {
    need(3);
    const auto r = map_inverse_mp_of_gfg1(ExactGFGParams::make(args[0], args[1], args[2]));
    return {"inverse_mp", 1, {{"theta", r.theta}, {"lambda", r.lambda}}};
  }
  if (kind == "inverse_sum") {
    need(2);
    if (denominator(args[1]) != 1 || args[1] < 1) fail(ErrorKind::InvalidParameters, "n must be a positive integer");
    const auto r = map_inverse_sum(args[0], numerator(args[1]).convert_to<unsigned>());
    return {"tau", r.scale, {{"p", r.P}}};
  }
  fail(ErrorKind::InvalidParameters, "unknown parameter map '" + std::string(kind) + "'");
}

namespace {

constexpr std::array<std::string_view, 11> kNames{
    "ADD_SEMIGROUP", "SCALE_LAW", "MULT_FORM_A", "MULT_FORM_B", "MEIXNER_SHIFT", "RATIO_LAW",
    "INV_SUM_LAW",   "HALF_SUM_COR", "FREE_BETA_S", "FREE_BETA_RS", "S_REVERSAL"};

constexpr double kMargin = 1e-3;

bool reversal_lemma_applies(const GFGParams& p) {
  return p.lambda > 1.0 && p.theta * (p.lambda - 1.0) < p.t;
}

enum class Kind { cauchy, r, s };

Kind kind_of(IdentityId id) {
  switch (id) {
    case IdentityId::AddSemigroup:
    case IdentityId::ScaleLaw:
    case IdentityId::InvSumLaw:
    case IdentityId::HalfSumCor:
      return Kind::r;
    case IdentityId::MeixnerShift:
      return Kind::cauchy;
    default:
      return Kind::s;
  }
}

double s_lower(IdentityId id, const IdentityParams& ip) {
  switch (id) {
    case IdentityId::MultFormA:
    case IdentityId::MultFormB:
      return -std::min(1.0, ip.gfg.q());
    default:
      return -1.0;
  }
}

void check_validity(IdentityId id, const IdentityParams& ip) {
  switch (id) {
    case IdentityId::MultFormA:
    case IdentityId::MultFormB:
      if (!(ip.gfg.lambda > 1.0)) fail(ErrorKind::Domain, std::string(identity_name(id)) + " needs lambda > 1");
      break;
    case IdentityId::RatioLaw:
      require_positive(ip.p, "p");
      require_positive(ip.q, "q");
      break;
    case IdentityId::InvSumLaw:
      require_positive(ip.p, "p");
      if (ip.n < 1 || ip.n > 20) fail(ErrorKind::Domain, "INV_SUM_LAW needs 1 <= n <= 20");
      break;
    case IdentityId::HalfSumCor:
      if (ip.m < 2) fail(ErrorKind::Domain, "HALF_SUM_COR needs m >= 2");
      break;
    case IdentityId::FreeBetaS:
    case IdentityId::FreeBetaRs:
      require_positive(ip.p, "p");
      break;
    case IdentityId::SReversal:
      if (!(ip.mp.lambda >= 1.0)) fail(ErrorKind::Domain, "S_REVERSAL needs a Marchenko-Pastur law with lambda >= 1");
      break;
    default:
      break;
  }
}

// |LHS - RHS| at one grid point.
double deviation(IdentityId id, const IdentityParams& ip, Complex z) {
  const GFGParams& g = ip.gfg;
  const double x = z.real();
  switch (id) {
    case IdentityId::AddSemigroup: {
      const Complex lhs = r_transform(rfam::Gfg{g}, z);
      const Complex rhs = g.t * r_transform(rfam::Gfg{GFGParams::make(1.0, g.theta, g.lambda)}, z);
      return std::abs(lhs - rhs);
    }
    case IdentityId::ScaleLaw: {
      // R_{D_c nu}(z) = R_nu(c z) and R_{nu^{boxplus s}} = s R_nu.
      const Complex lhs = r_transform(rfam::Gfg{g}, z);
      const Complex rhs = r_transform(rfam::Gfg{GFGParams::make(g.t, 1.0, g.lambda)}, g.theta * z) / g.theta;
      return std::abs(lhs - rhs);
    }
    case IdentityId::MultFormA: {
      const double lhs = s_transform(sfam::Gfg{g}, x);
      const double rhs = s_transform(dilated(g.shift(), sfam::Mp{MPParams::make(1.0, g.q())}), x) *
                         s_transform(sfam::InverseMp{MPParams::make(1.0, 1.0 + g.t / g.theta)}, x);
      return std::abs(lhs - rhs);
    }
    case IdentityId::MultFormB: {
      const double q = g.q();
      const double lhs = s_transform(sfam::Gfg{g}, x);
      const double rhs = s_transform(sfam::Gfg{GFGParams::make(g.t, g.theta, 1.0)}, x) *
                         s_transform(sfam::Mp{MPParams::make(1.0 / q, q)}, x);
      return std::abs(lhs - rhs);
    }
    case IdentityId::MeixnerShift: {
      const auto nu = FreeMeixnerParams::make(g.t * g.theta * g.lambda, g.theta * (g.lambda + 1.0),
                                              g.theta * g.theta * g.lambda);
      return std::abs(cauchy_transform(g, z) - meixner_cauchy(nu, z - g.t));
    }
    case IdentityId::RatioLaw: {
      const double p = ip.p, q = ip.q;
      const SFamily eta_p = sfam::Gfg{GFGParams::make(p, 1.0, 1.0)};
      const SFamily eta_q_rev = reversed(sfam::Gfg{GFGParams::make(q, 1.0, 1.0)});
      const double lhs = s_transform(eta_p, x) * s_transform(eta_q_rev, x);
      const SFamily target = dilated((1.0 + q) / (q * q), sfam::Gfg{GFGParams::make(p, 1.0, 1.0 + p / (1.0 + q))});
      return std::abs(lhs - s_transform(target, x));
    }
    case IdentityId::InvSumLaw: {
      const auto map = map_inverse_sum(exact_rational(ip.p), ip.n);
      const double P = to_double(map.P);
      const double scale = to_double(map.scale);
      const Complex lhs = std::ldexp(1.0, static_cast<int>(ip.n)) *
                          r_transform(rfam::Mp{MPParams::make(1.0 / (ip.p * ip.p), 1.0 + ip.p)}, z);
      const Complex rhs = r_transform(rfam::Mp{MPParams::make(1.0 / (P * P), 1.0 + P)}, z / scale);
      return std::abs(lhs - rhs);
    }
    case IdentityId::HalfSumCor: {
      const double m = ip.m;
      const double p = 1.0 / (2.0 * (m - 1.0));
      // Reciprocal sum of two: D_{p^2/(2p+1)^2}(eta(2p+1, 1)).
      const double c_lhs = p * p / ((2.0 * p + 1.0) * (2.0 * p + 1.0));
      const Complex lhs = r_transform(rfam::Gfg{GFGParams::make(2.0 * p + 1.0, 1.0, 1.0)}, c_lhs * z);
      const double c_rhs = 1.0 / (4.0 * m * m);
      const Complex rhs = m * r_transform(rfam::Gfg{GFGParams::make(1.0 / (m - 1.0), 1.0, 1.0)}, c_rhs * z);
      return std::abs(lhs - rhs);
    }
    case IdentityId::FreeBetaS: {
      const double p = ip.p;
      const SFamily tau_p = sfam::Mp{MPParams::make(1.0 / (p * p), 1.0 + p)};
      const SFamily recip_sum =
          dilated(p * p / ((2.0 * p + 1.0) * (2.0 * p + 1.0)), sfam::Gfg{GFGParams::make(2.0 * p + 1.0, 1.0, 1.0)});
      const double lhs = s_transform(tau_p, x) / s_transform(recip_sum, x);
      const double rhs = std::pow(p, 4) / ((1.0 + p + x) * (2.0 * p + 1.0 - x));
      return std::max(std::abs(lhs - rhs), std::abs(lhs - s_transform(sfam::FreeBeta{p}, x)));
    }
    case IdentityId::FreeBetaRs: {
      const double zs = x * s_transform(sfam::FreeBeta{ip.p}, x);
      return std::abs(r_transform(rfam::FreeBeta{ip.p}, Complex(zs, 0.0)) - x);
    }
    case IdentityId::SReversal: {
      const double lhs = s_transform(sfam::InverseMp{ip.mp}, x);
      const double rhs = 1.0 / s_transform(sfam::Mp{ip.mp}, -x - 1.0);
      double dev = std::abs(lhs - rhs);
      if (reversal_lemma_applies(g)) {
        const auto r = map_reversed(ExactGFGParams::from(g));
        const double s_rev = s_transform(reversed(sfam::Gfg{g}), x);
        const double s_map = s_transform(dilated(to_double(r.scale), sfam::Gfg{r.params.to_double()}), x);
        dev = std::max(dev, std::abs(s_rev - s_map));
      }
      return dev;
    }
  }
  return 0.0;
}

}  // namespace

std::string_view identity_name(IdentityId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (auto id : kIdentityCatalog)
    if (identity_name(id) == name) return id;
  return std::nullopt;
}

std::string IdentityParams::describe(IdentityId id) const {
  std::ostringstream out;
  switch (id) {
    case IdentityId::RatioLaw:
      out << "p=" << shortest(p) << " q=" << shortest(q);
      break;
    case IdentityId::InvSumLaw:
      out << "p=" << shortest(p) << " n=" << n;
      break;
    case IdentityId::HalfSumCor:
      out << "m=" << m;
      break;
    case IdentityId::FreeBetaS:
    case IdentityId::FreeBetaRs:
      out << "p=" << shortest(p);
      break;
    case IdentityId::SReversal:
      out << mp.describe();
      if (reversal_lemma_applies(gfg)) out << " " << gfg.describe();
      break;
    default:
      out << gfg.describe();
  }
  return out.str();
}

TransformGrid default_grid(IdentityId id, const IdentityParams& ip, std::size_t n) {
  switch (kind_of(id)) {
    case Kind::s:
      return real_grid(s_lower(id, ip) + kMargin, -kMargin, n);
    case Kind::cauchy: {
      const auto s = support(ip.gfg);
      return upper_grid(s.lo - 1.0, s.hi + 1.0, {0.05, 0.3, 1.5}, n);
    }
    case Kind::r: {
      // Half on the negative axis, half strictly inside the lower half-plane.
      TransformGrid g{{}, Region::lower_half_plane};
      const std::size_t nr = n / 2;
      const auto reals = real_grid(-2.0, -kMargin, nr);
      g.points = reals.points;
      const auto upper = upper_grid(-2.0, 2.0, {0.05, 0.5, 2.0}, n - nr);
      for (auto z : upper.points) g.points.push_back(std::conj(z));
      return g;
    }
  }
  return {};
}

std::vector<IdentityParams> default_parameter_sets(IdentityId id) {
  std::vector<IdentityParams> out;
  auto gfg = [&](std::initializer_list<std::array<double, 3>> triples) {
    for (const auto& t : triples) {
      IdentityParams ip;
      ip.gfg = GFGParams::make(t[0], t[1], t[2]);
      out.push_back(ip);
    }
  };
  switch (id) {
    case IdentityId::AddSemigroup:
    case IdentityId::ScaleLaw:
    case IdentityId::MeixnerShift:
      gfg({{1, 1, 1}, {1, 1, 2}, {2, 1, 1.5}, {0.5, 2, 1.2}, {1, 0.5, 3}, {3, 1, 2.5}, {1, 2, 1.5}, {2, 0.5, 5},
           {0.7, 1.3, 1.4}, {1, 1, 3}});
      break;
    case IdentityId::MultFormA:
    case IdentityId::MultFormB:
      gfg({{1, 1, 2}, {1, 1, 3}, {2, 1, 1.5}, {0.5, 2, 1.2}, {1, 0.5, 3}, {3, 1, 2.5}, {1, 2, 1.5}, {2, 0.5, 5},
           {0.7, 1.3, 1.4}, {1, 1, 1.25}});
      break;
    case IdentityId::RatioLaw:
      for (auto [p, q] : std::initializer_list<std::pair<double, double>>{
               {1, 1}, {0.5, 2}, {2, 0.5}, {3, 1}, {1, 3}, {0.25, 0.25}, {5, 5}, {0.1, 1}, {1, 0.1}, {2, 2}}) {
        IdentityParams ip;
        ip.p = p;
        ip.q = q;
        out.push_back(ip);
      }
      break;
    case IdentityId::InvSumLaw:
      for (auto [p, n] : std::initializer_list<std::pair<double, unsigned>>{
               {1, 1}, {1, 2}, {1, 3}, {0.5, 1}, {0.5, 2}, {2, 1}, {2, 3}, {0.1, 1}, {3, 2}, {0.25, 4}}) {
        IdentityParams ip;
        ip.p = p;
        ip.n = n;
        out.push_back(ip);
      }
      break;
    case IdentityId::HalfSumCor:
      for (unsigned m = 2; m <= 11; ++m) {
        IdentityParams ip;
        ip.m = m;
        out.push_back(ip);
      }
      break;
    case IdentityId::FreeBetaS:
    case IdentityId::FreeBetaRs:
      for (double p : {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 7.5, 10.0}) {
        IdentityParams ip;
        ip.p = p;
        out.push_back(ip);
      }
      break;
    case IdentityId::SReversal: {
      const std::array<std::array<double, 2>, 10> mps{{{1, 1}, {1, 2}, {0.5, 3}, {2, 1.5}, {1, 4}, {3, 2}, {0.25, 1.1}, {1, 10}, {2, 2}, {0.7, 5}}};
      const std::array<std::array<double, 3>, 10> gs{{{1, 1, 1.5}, {1, 1, 1.9}, {2, 1, 1.5}, {0.5, 2, 1.2}, {1, 0.5, 2}, {3, 1, 2.5}, {1, 2, 1.25}, {2, 0.5, 4}, {0.7, 1.3, 1.4}, {1, 1, 1.1}}};
      for (std::size_t i = 0; i < mps.size(); ++i) {
        IdentityParams ip;
        ip.mp = MPParams::make(mps[i][0], mps[i][1]);
        ip.gfg = GFGParams::make(gs[i][0], gs[i][1], gs[i][2]);
        out.push_back(ip);
      }
      break;
    }
  }
  return out;
}

IdentityReport verify_identity(IdentityId id, const IdentityParams& params, const TransformGrid& grid,
                               double tolerance, ExecutionPolicy policy) {
  check_validity(id, params);
  IdentityReport rep{id, params, grid, 0.0, tolerance, false, {}};
  const auto devs = map_indices(policy, grid.points.size(), [&](std::size_t i) { return deviation(id, params, grid.points[i]); });
  for (double d : devs) rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::isnan(d) ? INFINITY : d);

  if (kind_of(id) == Kind::s) {
    const double lo = s_lower(id, params);
    for (auto z : grid.points) {
      if (z.real() - lo < kMargin || -z.real() < kMargin) {
        std::ostringstream msg;
        msg << "grid point " << shortest(z.real()) << " lies within " << kMargin << " of a domain end";
        rep.warnings.push_back(msg.str());
        break;
      }
    }
  }
  rep.pass = rep.max_abs_deviation <= tolerance;
  return rep;
}

IdentityReport verify_identity(IdentityId id, const IdentityParams& params, double tolerance, ExecutionPolicy policy) {
  return verify_identity(id, params, default_grid(id, params), tolerance, policy);
}

FidWitness free_beta_fid_witness(double p) {
  require_positive(p, "p");
  const double k = (3.0 * p + 2.0) * (3.0 * p + 2.0);
  const double p4 = std::pow(p, 4);
  const double im = 2.0 * std::sqrt((p + 1.0) * (2.0 * p + 1.0));
  FidWitness w;
  w.root_pair = {p4 * Complex(p, im) / k, p4 * Complex(p, -im) / k};
  const double p5 = std::pow(p, 5), p8 = p4 * p4;
  for (auto z : w.root_pair) {
    const double scale = k * std::norm(z) + 2.0 * p5 * std::abs(z) + p8;
    w.residual = std::max(w.residual, std::abs(k * z * z - 2.0 * p5 * z + p8) / scale);
  }
  if (!(std::abs(w.root_pair[0].imag()) > 0.0))
    fail(ErrorKind::InternalInconsistency, "free beta witness roots are real");
  w.is_fid = false;
  return w;
}

}  // namespace fg
