#include "freegamma/equilibrium.hpp"

#include "freegamma/error.hpp"
#include "freegamma/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace fg {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

void require_confining(const GFGParams& p) {
  if (!(p.theta * (p.lambda - 1.0) < p.t))
    fail(ErrorKind::Domain, "equilibrium statements need 1 <= lambda < 1 + t/theta (" + p.describe() + ")");
}

void require_entropy_domain(const SpectralMeasure& m) {
  if (m.atom0 > 0.0) fail(ErrorKind::Divergence, "logarithmic energy of a measure with an atom is -infinity");
  if (!(m.support.lo > 0.0)) fail(ErrorKind::Domain, m.label + " is not supported in (0, inf)");
}

// int_a^b log|x - s| rho(x) dx with s outside (a, b) or on its boundary.
QuadResult log_piece(const SpectralMeasure& m, double a, double b, double s, double tol) {
  const double width = b - a;
  auto f = [&](double x, double d) {
    const bool near_a = x - a < b - x;
    double gap;
    if (s <= a) gap = (a - s) + (near_a ? d : width - d);
    else gap = (s - b) + (near_a ? width - d : d);
    return std::log(gap) * m.density(x);
  };
  return integrate_tanh_sinh(f, a, b, tol);
}

SpectralMeasure shifted(const GFGParams& p, double offset) {
  const auto m = gfg_measure(p);
  if (!(m.support.lo + offset > 0.0))
    fail(ErrorKind::Domain, "translation by " + shortest(offset) + " leaves (0, inf)");
  return translate(m, offset);
}

}  // namespace

double hilbert_transform(const GFGParams& p, double x) {
  const auto s = support(p);
  if (!(x > s.lo && x < s.hi)) fail(ErrorKind::Domain, "Hilbert transform is evaluated inside the support only");
  const double c = p.shift();
  return ((p.t + 2.0 * p.theta) * x - p.t * (p.t - p.theta * (p.lambda - 1.0))) / (2.0 * p.theta * x * (x + c));
}

double el_residual(const GFGParams& p, double x) {
  return hilbert_transform(p, x) - 0.5 * Potential{p}.derivative(x);
}

EndpointEquations endpoint_equations(const GFGParams& p) {
  require_confining(p);
  const auto s = support(p);
  auto out = endpoint_equations(p, s.lo, s.hi);
  const auto e = ExactGFGParams::from(p);
  const Rational center = e.theta * (e.lambda + 1) + e.t;
  const Rational closed_sum = 2 * (e.theta * (e.lambda + 1) + e.t);
  const Rational gap = e.theta * (e.lambda - 1) - e.t;
  // alpha^+- = center +- 2 sqrt(theta lambda (theta + t)).
  out.sum_gap = to_double(Rational(2 * center - closed_sum));
  out.prod_gap = to_double(Rational(center * center - 4 * e.theta * e.lambda * (e.theta + e.t) - gap * gap));
  return out;
}

EndpointEquations endpoint_equations(const GFGParams& p, double a, double b) {
  if (!(a > 0.0 && b > a)) fail(ErrorKind::Domain, "endpoint equations need 0 < a < b");
  const Potential v{p};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto rule = [&](int n) {
    std::vector<double> f0(n), f2(n), mag(n);
    for (int k = 0; k < n; ++k) {
      const double x = c + h * std::cos((2.0 * k + 1.0) * kPi / (2.0 * n));
      f0[k] = v.derivative(x);
      f2[k] = x * f0[k];
      mag[k] = std::abs(f0[k]) + std::abs(f2[k]);
    }
    return std::array{pairwise_sum(f0) / n, pairwise_sum(f2) / n, *std::max_element(mag.begin(), mag.end())};
  };
  auto prev = rule(32);
  for (int n = 64; n <= (1 << 18); n *= 2) {
    auto next = rule(n);
    const double change = std::max(std::abs(next[0] - prev[0]), std::abs(next[1] - prev[1]));
    // Terms near a small left edge are large and cancel; the attainable
    // accuracy scales with the largest of them.
    if (change <= 1e-14 * std::max(1.0, next[2])) return {next[0], next[1], 0.0, 0.0};
    prev = next;
  }
  fail(ErrorKind::QuadratureFailure, "Chebyshev-Gauss rule did not settle for the endpoint equations");
}

QuadResult log_potential(const SpectralMeasure& m, double s, double tol) {
  if (m.atom0 > 0.0) fail(ErrorKind::Divergence, "logarithmic potential with an atom is handled by the caller");
  const double lo = m.support.lo;
  const double hi = m.support.hi;
  if (s <= lo || s >= hi) return log_piece(m, lo, hi, s, tol);
  const auto left = log_piece(m, lo, s, s, tol);
  const auto right = log_piece(m, s, hi, s, tol);
  return {left.value + right.value, left.error + right.error};
}

QuadResult cross_log_energy(const SpectralMeasure& a, const SpectralMeasure& b, double tol, ExecutionPolicy policy) {
  std::vector<double> cuts{b.support.lo};
  for (double e : {a.support.lo, a.support.hi})
    if (e > b.support.lo && e < b.support.hi) cuts.push_back(e);
  cuts.push_back(b.support.hi);
  std::sort(cuts.begin(), cuts.end());
  QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    auto f = [&](double y, double) { return log_potential(a, y, 1e-12).value * b.density_at(y); };
    const auto r = integrate_tanh_sinh_nodes(f, lo, hi, tol, policy);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

MeasureMixture MeasureMixture::single(SpectralMeasure m) {
  MeasureMixture out;
  out.add(1.0, std::move(m));
  return out;
}

void MeasureMixture::add(double weight, SpectralMeasure m) {
  if (!(weight >= 0.0)) fail(ErrorKind::InvalidParameters, "mixture weights must be nonnegative");
  if (weight == 0.0) return;
  weights.push_back(weight);
  parts.push_back(std::move(m));
}

EntropyValue free_entropy(const GFGParams& p, const SpectralMeasure& m, ExecutionPolicy policy) {
  return free_entropy(p, MeasureMixture::single(m), policy);
}

EntropyValue free_entropy(const GFGParams& p, const MeasureMixture& m, ExecutionPolicy policy) {
  require_confining(p);
  if (m.parts.empty()) fail(ErrorKind::InvalidParameters, "empty mixture");
  double mass = 0.0;
  for (std::size_t i = 0; i < m.parts.size(); ++i) {
    require_entropy_domain(m.parts[i]);
    mass += m.weights[i];
  }
  if (std::abs(mass - 1.0) > 1e-12) fail(ErrorKind::InvalidParameters, "mixture weights must sum to 1");

  const Potential v{p};
  EntropyValue out;
  for (std::size_t i = 0; i < m.parts.size(); ++i) {
    for (std::size_t j = i; j < m.parts.size(); ++j) {
      const auto r = cross_log_energy(m.parts[i], m.parts[j], 1e-10, policy);
      const double w = (i == j ? 1.0 : 2.0) * m.weights[i] * m.weights[j];
      out.logarithmic_energy += w * r.value;
      out.error += w * r.error;
    }
    const auto& part = m.parts[i];
    auto f = [&](double x, double) { return v(x) * part.density_at(x); };
    const auto r = integrate_tanh_sinh_nodes(f, part.support.lo, part.support.hi, 1e-13, policy);
    out.potential_term += m.weights[i] * r.value;
    out.error += m.weights[i] * r.error;
  }
  out.total = out.logarithmic_energy - out.potential_term;
  return out;
}

double effective_potential(const GFGParams& p, double x) {
  return 2.0 * log_potential(gfg_measure(p), x).value - Potential{p}(x);
}

std::string_view perturbation_name(Perturbation f) {
  switch (f) {
    case Perturbation::dilation: return "dilation";
    case Perturbation::translation: return "translation";
    case Perturbation::mixture: return "mixture";
    case Perturbation::smoothing: return "smoothing";
  }
  return "unknown";
}

std::vector<PerturbationSpec> default_perturbations() {
  return {
      {Perturbation::dilation, {0.8, 0.9, 0.95, 1.1, 1.25}},
      {Perturbation::translation, {-0.5, -0.25, 0.25, 0.5, 1.0}},
      {Perturbation::mixture, {0.05, 0.1, 0.2, 0.3, 0.5}},
      {Perturbation::smoothing, {0.05, 0.1, 0.15, 0.2, 0.3}},
  };
}

GaussRule gauss_hermite(int n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "Gauss-Hermite rule needs n >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) fail(ErrorKind::EigensolverFailure, "Golub-Welsch eigenproblem failed");
  GaussRule rule;
  for (int k = 0; k < n; ++k) {
    rule.nodes.push_back(solver.eigenvalues()(k));
    const double v = solver.eigenvectors()(0, k);
    rule.weights.push_back(v * v);
  }
  return rule;
}

MeasureMixture perturb(const GFGParams& p, Perturbation family, double magnitude) {
  const auto mu = gfg_measure(p);
  switch (family) {
    case Perturbation::dilation:
      if (magnitude == 1.0) return MeasureMixture::single(mu);
      return MeasureMixture::single(dilate(mu, magnitude));
    case Perturbation::translation:
      if (magnitude == 0.0) return MeasureMixture::single(mu);
      return MeasureMixture::single(shifted(p, magnitude * mu.support.lo));
    case Perturbation::mixture: {
      if (!(magnitude >= 0.0 && magnitude <= 1.0)) fail(ErrorKind::Domain, "mixture weight must lie in [0, 1]");
      MeasureMixture out;
      out.add(1.0 - magnitude, mu);
      out.add(magnitude, mp_measure(MPParams::make(p.theta, p.lambda + p.t / p.theta)));
      return out;
    }
    case Perturbation::smoothing: {
      if (!(magnitude >= 0.0)) fail(ErrorKind::Domain, "smoothing width must be nonnegative");
      if (magnitude == 0.0) return MeasureMixture::single(mu);
      const auto rule = gauss_hermite(24);
      MeasureMixture out;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        out.add(rule.weights[k], dilate(mu, std::exp(magnitude * rule.nodes[k])));
      // Normalize away the rounding in the Golub-Welsch weights.
      double total = 0.0;
      for (double w : out.weights) total += w;
      for (double& w : out.weights) w /= total;
      return out;
    }
  }
  fail(ErrorKind::InvalidParameters, "unknown perturbation family");
}

MaximalityReport maximality_probe(const GFGParams& p, const std::vector<PerturbationSpec>& families, double margin,
                                  ExecutionPolicy policy) {
  require_confining(p);
  MaximalityReport rep;
  rep.params = p;
  rep.margin = margin;
  rep.candidate = free_entropy(p, gfg_measure(p), policy);
  rep.pass = true;
  for (const auto& fam : families) {
    for (double mag : fam.magnitudes) {
      ProbeResult r;
      r.family = fam.family;
      r.magnitude = mag;
      r.entropy = free_entropy(p, perturb(p, fam.family, mag), policy);
      r.gap = rep.candidate.total - r.entropy.total;
      r.below = r.gap > margin;
      rep.pass = rep.pass && r.below;
      rep.probes.push_back(r);
    }
  }
  return rep;
}

}  // namespace fg
