#pragma once

#include "freegamma/params.hpp"
#include "freegamma/parallel.hpp"
#include "freegamma/quadrature.hpp"
#include "freegamma/rmt.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace fg {

/// The potential V_{t,theta,lambda} on (0, inf):
///   lambda = 1: (2 + t/theta) log x + t^2/(theta x)
///   lambda > 1: (1 - q) log x + (1 + t lambda/(theta(lambda-1))) log(x + t(lambda-1)).
struct Potential {
  GFGParams params;

  double operator()(double x) const;
  double derivative(double x) const;
};

/// Natural splitting point of the half line: t(lambda-1), or t^2/theta at lambda = 1.
double gibbs_scale(const GFGParams& p);

/// Closed-form normalizer int_0^inf exp(-V).
double partition_function(const GFGParams& p);
double log_partition_function(const GFGParams& p);
/// The same integral by quadrature, split at gibbs_scale(p).
QuadResult partition_function_quadrature(const GFGParams& p, double tol = 1e-12);

double gibbs_density(const GFGParams& p, double x);
/// d/dx log of the Gibbs density, -V'(x).
double gibbs_log_derivative(const GFGParams& p, double x);

/// Density of D_{t(lambda-1)}(beta'(q, 1 + t/theta)) for lambda > 1.
double scaled_beta_prime_density(const GFGParams& p, double x);
/// Density of the reciprocal of a gamma(1 + t/theta, theta/t^2) variable.
double inverse_gamma_density(double a, double b, double x);

/// p'/p plus the Pearson rational function, written around y = x + t(lambda - 1)/2; zero when the
/// Gibbs density solves the Pearson equation.
double pearson_residual(const GFGParams& p, double x);

/// Distribution function of the Gibbs measure, tabulated in u = x/(x + s) on
/// `knots` equal cells with quadrature cell masses. Inside a cell the table is
/// the cubic Hermite interpolant built from the exact density, clamped to the
/// cell's range; the two end cells (and any cell touching a singular knot) use
/// quadrature over the partial cell instead.
class GibbsCdf {
 public:
  explicit GibbsCdf(const GFGParams& p, std::size_t knots = 10000, ExecutionPolicy policy = ExecutionPolicy::parallel);

  double operator()(double x) const;
  double quantile(double prob) const;
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  double integrand(double u) const;
  double partial(std::size_t k, double u) const;
  bool exact_cell(std::size_t k) const;
  double hermite(std::size_t k, double s) const;

  GFGParams p_;
  double scale_;
  double log_z_;
  double step_;
  std::size_t cells_;
  std::vector<double> cumulative_;
  std::vector<double> slope_;
};

namespace claw {
/// Shape a, scale b.
struct Gamma { double a; double b; };
/// Reciprocal of Gamma(a, b).
struct InverseGamma { double a; double b; };
/// Gamma(a,1)/Gamma(b,1).
struct BetaPrime { double a; double b; };
struct Gibbs { GFGParams p; };
}  // namespace claw

using ClassicalLaw = std::variant<claw::Gamma, claw::InverseGamma, claw::BetaPrime, claw::Gibbs>;

/// n i.i.d. draws; work is split into fixed chunks with their own substreams,
/// so the output does not depend on the thread count.
std::vector<double> classical_sampler(const ClassicalLaw& law, std::size_t n, RngStream rng,
                                      ExecutionPolicy policy = ExecutionPolicy::parallel);

enum class ClassicalIdentityId { RhoMultA, RhoMultB, RhoMe };
std::string_view classical_identity_name(ClassicalIdentityId id);
std::optional<ClassicalIdentityId> parse_classical_identity(std::string_view name);

struct ClassicalReport {
  ClassicalIdentityId id;
  GFGParams params;
  std::size_t n = 0;
  double ks = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Kolmogorov-Smirnov distance between products of independent classical
/// samples and the Gibbs distribution function. RHO_ME uses only t and theta
/// (lambda is set to 1 + t/theta).
ClassicalReport verify_classical_identity(ClassicalIdentityId id, const GFGParams& p, std::size_t n, RngStream rng,
                                          ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Sup distance between the empirical distribution of `samples` and `cdf`.
double ks_distance(std::vector<double> samples, const GibbsCdf& cdf);

}  // namespace fg
