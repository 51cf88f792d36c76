#include "freegamma/gibbs.hpp"

#include "freegamma/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace fg {

namespace {

constexpr std::size_t kSampleChunk = 4096;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double log_density(const GFGParams& p, double log_z, double x) {
  return -Potential{p}(x) - log_z;
}

double uniform_open(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

void require_shape(double a, double b) {
  require_positive(a, "shape");
  require_positive(b, "scale");
}

}  // namespace

double Potential::operator()(double x) const {
  const auto& p = params;
  if (p.lambda_is_one()) return (2.0 + p.t / p.theta) * std::log(x) + p.t * p.t / (p.theta * x);
  const double l1 = p.lambda - 1.0;
  return (1.0 - p.q()) * std::log(x) + (1.0 + p.t * p.lambda / (p.theta * l1)) * std::log(x + p.shift());
}

double Potential::derivative(double x) const {
  const auto& p = params;
  if (p.lambda_is_one()) return (2.0 + p.t / p.theta) / x - p.t * p.t / (p.theta * x * x);
  const double l1 = p.lambda - 1.0;
  return (1.0 - p.q()) / x + (1.0 + p.t * p.lambda / (p.theta * l1)) / (x + p.shift());
}

double gibbs_scale(const GFGParams& p) { return p.lambda_is_one() ? p.t * p.t / p.theta : p.shift(); }

double log_partition_function(const GFGParams& p) {
  const double a = 1.0 + p.t / p.theta;
  if (p.lambda_is_one()) return -a * std::log(p.t * p.t / p.theta) + std::lgamma(a);
  return -a * std::log(p.shift()) + log_beta(p.q(), a);
}

double partition_function(const GFGParams& p) { return std::exp(log_partition_function(p)); }

QuadResult partition_function_quadrature(const GFGParams& p, double tol) {
  const Potential v{p};
  auto f = [&](double x) { return x > 0.0 ? std::exp(-v(x)) : 0.0; };
  const double s = gibbs_scale(p);
  const auto head = integrate_tanh_sinh(f, 0.0, s, tol);
  const auto tail = integrate_half_line(f, s, tol);
  return {head.value + tail.value, head.error + tail.error};
}

double gibbs_density(const GFGParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(log_density(p, log_partition_function(p), x));
}

double gibbs_log_derivative(const GFGParams& p, double x) { return -Potential{p}.derivative(x); }

double inverse_gamma_density(double a, double b, double x) {
  require_shape(a, b);
  if (!(x > 0.0)) return 0.0;
  return std::exp((-a - 1.0) * std::log(x) - 1.0 / (b * x) - a * std::log(b) - std::lgamma(a));
}

double scaled_beta_prime_density(const GFGParams& p, double x) {
  if (p.lambda_is_one()) fail(ErrorKind::Domain, "beta-prime dictionary needs lambda > 1");
  if (!(x > 0.0)) return 0.0;
  const double a = p.q();
  const double b = 1.0 + p.t / p.theta;
  const double c = p.shift();
  const double y = x / c;
  return std::exp((a - 1.0) * std::log(y) - (a + b) * std::log1p(y) - log_beta(a, b)) / c;
}

double pearson_residual(const GFGParams& p, double x) {
  const double t = p.t;
  const double th = p.theta;
  const double lp = gibbs_log_derivative(p, x);
  if (p.lambda_is_one()) return lp + (x - t * t / (2.0 * th + t)) / ((th / (2.0 * th + t)) * x * x);
  const double l = p.lambda;
  const double y = x + t * (l - 1.0) / 2.0;
  const double num = y - t * t * (l + 1.0) / (2.0 * (2.0 * th + t));
  const double den = (th / (2.0 * th + t)) * y * y - t * t * th * (l - 1.0) * (l - 1.0) / (4.0 * (2.0 * th + t));
  return lp + num / den;
}

GibbsCdf::GibbsCdf(const GFGParams& p, std::size_t knots, ExecutionPolicy policy)
    : p_(p), scale_(gibbs_scale(p)), log_z_(log_partition_function(p)) {
  if (knots < 2) fail(ErrorKind::InvalidParameters, "Gibbs cdf table needs at least two knots");
  step_ = 1.0 / static_cast<double>(knots);
  cells_ = knots;
  slope_ = map_indices(policy, knots + 1, [&](std::size_t k) { return integrand(static_cast<double>(k) * step_); });
  if (p.lambda_is_one() || p.q() < 1.0) slope_[0] = std::numeric_limits<double>::infinity();
  auto cells = map_indices(policy, knots, [&](std::size_t k) {
    return partial(k, k + 1 == knots ? 1.0 : static_cast<double>(k + 1) * step_);
  });
  cumulative_.assign(knots + 1, 0.0);
  for (std::size_t k = 0; k < knots; ++k) cumulative_[k + 1] = cumulative_[k] + cells[k];
  if (std::abs(cumulative_.back() - 1.0) > 1e-8)
    fail(ErrorKind::QuadratureFailure, "Gibbs cdf table does not reach 1 for " + p.describe(),
         cumulative_.back() - 1.0);
}

double GibbsCdf::integrand(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) return 0.0;
  const double x = scale_ * u / (1.0 - u);
  const double lg = log_density(p_, log_z_, x) + std::log(scale_) - 2.0 * std::log1p(-u);
  return std::exp(lg);
}

double GibbsCdf::partial(std::size_t k, double u) const {
  const double a = static_cast<double>(k) * step_;
  if (!(u > a)) return 0.0;
  auto g = [this](double v) { return integrand(v); };
  if (k == 0 || k + 1 == cells_) return integrate_tanh_sinh(g, a, u, 1e-14).value;
  return integrate_gk(g, a, u, 1e-13, 3).value;
}

bool GibbsCdf::exact_cell(std::size_t k) const {
  return k == 0 || k + 1 == cells_ || !std::isfinite(slope_[k]) || !std::isfinite(slope_[k + 1]);
}

double GibbsCdf::hermite(std::size_t k, double s) const {
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double v = (2 * s3 - 3 * s2 + 1) * cumulative_[k] + (s3 - 2 * s2 + s) * step_ * slope_[k] +
                   (-2 * s3 + 3 * s2) * cumulative_[k + 1] + (s3 - s2) * step_ * slope_[k + 1];
  return std::clamp(v, cumulative_[k], cumulative_[k + 1]);
}

double GibbsCdf::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return cumulative_.back();
  const double u = x / (x + scale_);
  const std::size_t k = std::min(static_cast<std::size_t>(u / step_), cells_ - 1);
  if (!exact_cell(k)) return hermite(k, (u - static_cast<double>(k) * step_) / step_);
  return std::min(cumulative_[k] + partial(k, u), cumulative_[k + 1]);
}

double GibbsCdf::quantile(double prob) const {
  if (!(prob > 0.0)) return 0.0;
  prob = std::min(prob, cumulative_.back());
  auto pos = std::upper_bound(cumulative_.begin(), cumulative_.end(), prob);
  std::size_t k = pos == cumulative_.begin() ? 0 : static_cast<std::size_t>(pos - cumulative_.begin()) - 1;
  k = std::min(k, cells_ - 1);
  const double base = static_cast<double>(k) * step_;
  const bool exact = exact_cell(k);
  // F restricted to the cell, as a function of the cell coordinate s in [0, 1].
  auto value = [&](double s) {
    return exact ? cumulative_[k] + partial(k, base + s * step_) : hermite(k, s);
  };
  double lo = 0.0;
  double hi = 1.0;
  const double cell = cumulative_[k + 1] - cumulative_[k];
  double s = cell > 0.0 ? std::clamp((prob - cumulative_[k]) / cell, 0.0, 1.0) : 0.5;
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    const double r = value(s) - prob;
    if (r == 0.0) break;
    if (r > 0.0) hi = s;
    else lo = s;
    const double g = step_ * integrand(base + s * step_);
    double next = (std::isfinite(g) && g > 0.0) ? s - r / g : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  const double u = base + s * step_;
  if (!(u < 1.0)) return std::numeric_limits<double>::infinity();
  return scale_ * u / (1.0 - u);
}

std::vector<double> classical_sampler(const ClassicalLaw& law, std::size_t n, RngStream rng, ExecutionPolicy policy) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "sample size must be at least 1");
  std::optional<GibbsCdf> table;
  std::visit(
      [&](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, claw::Gibbs>) table.emplace(l.p, 10000, policy);
        else require_shape(l.a, l.b);
      },
      law);

  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  auto parts = map_indices(policy, chunks, [&](std::size_t c) {
    auto engine = rng.substream(c).engine();
    const std::size_t count = std::min(kSampleChunk, n - c * kSampleChunk);
    std::vector<double> out(count);
    std::visit(
        [&](const auto& l) {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, claw::Gamma>) {
            std::gamma_distribution<double> d(l.a, l.b);
            for (auto& v : out) v = d(engine);
          } else if constexpr (std::is_same_v<L, claw::InverseGamma>) {
            std::gamma_distribution<double> d(l.a, l.b);
            for (auto& v : out) v = 1.0 / d(engine);
          } else if constexpr (std::is_same_v<L, claw::BetaPrime>) {
            std::gamma_distribution<double> da(l.a, 1.0);
            std::gamma_distribution<double> db(l.b, 1.0);
            for (auto& v : out) {
              const double x = da(engine);
              v = x / db(engine);
            }
          } else {
            for (auto& v : out) v = table->quantile(uniform_open(engine));
          }
        },
        law);
    return out;
  });
  std::vector<double> samples;
  samples.reserve(n);
  for (auto& part : parts) samples.insert(samples.end(), part.begin(), part.end());
  return samples;
}

namespace {
constexpr std::array<std::pair<ClassicalIdentityId, std::string_view>, 3> kClassicalNames{{
    {ClassicalIdentityId::RhoMultA, "RHO_MULT_A"},
    {ClassicalIdentityId::RhoMultB, "RHO_MULT_B"},
    {ClassicalIdentityId::RhoMe, "RHO_ME"},
}};
}  // namespace

std::string_view classical_identity_name(ClassicalIdentityId id) {
  for (const auto& [k, name] : kClassicalNames)
    if (k == id) return name;
  return "UNKNOWN";
}

std::optional<ClassicalIdentityId> parse_classical_identity(std::string_view name) {
  for (const auto& [k, n] : kClassicalNames)
    if (n == name) return k;
  return std::nullopt;
}

double ks_distance(std::vector<double> samples, const GibbsCdf& cdf) {
  if (samples.empty()) fail(ErrorKind::InvalidParameters, "empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  auto gaps = map_indices(ExecutionPolicy::parallel, samples.size(), [&](std::size_t i) {
    const double f = cdf(samples[i]);
    return std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f);
  });
  return *std::max_element(gaps.begin(), gaps.end());
}

ClassicalReport verify_classical_identity(ClassicalIdentityId id, const GFGParams& p_in, std::size_t n, RngStream rng,
                                          ExecutionPolicy policy) {
  if (n < 10000) fail(ErrorKind::InvalidParameters, "classical identity checks need n >= 10^4");
  GFGParams p = p_in;
  if (id == ClassicalIdentityId::RhoMe) p = GFGParams::make(p.t, p.theta, 1.0 + p.t / p.theta);
  else if (p.lambda_is_one())
    fail(ErrorKind::Domain, std::string(classical_identity_name(id)) + " is undefined at lambda = 1");

  const double a = 1.0 + p.t / p.theta;
  std::vector<double> left;
  std::vector<double> right;
  switch (id) {
    case ClassicalIdentityId::RhoMultA: {
      left = classical_sampler(claw::Gamma{p.q(), 1.0}, n, rng.substream(0), policy);
      right = classical_sampler(claw::InverseGamma{a, 1.0}, n, rng.substream(1), policy);
      for (auto& v : left) v *= p.shift();
      break;
    }
    case ClassicalIdentityId::RhoMultB: {
      left = classical_sampler(claw::InverseGamma{a, p.theta / (p.t * p.t)}, n, rng.substream(0), policy);
      right = classical_sampler(claw::Gamma{p.q(), 1.0 / p.q()}, n, rng.substream(1), policy);
      break;
    }
    case ClassicalIdentityId::RhoMe: {
      left = classical_sampler(claw::InverseGamma{a, p.theta / (p.t * p.t)}, n, rng.substream(0), policy);
      right = classical_sampler(claw::Gamma{1.0, 1.0}, n, rng.substream(1), policy);
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) left[i] *= right[i];

  ClassicalReport rep;
  rep.id = id;
  rep.params = p;
  rep.n = n;
  rep.threshold = std::max(0.02, 3.0 * std::sqrt(std::log(2.0) / static_cast<double>(n)));
  rep.ks = ks_distance(std::move(left), GibbsCdf(p, 10000, policy));
  rep.pass = rep.ks < rep.threshold;
  return rep;
}

}  // namespace fg
