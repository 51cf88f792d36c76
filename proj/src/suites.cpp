#include "freegamma/suites.hpp"

#include "freegamma/measures.hpp"

#include <algorithm>
#include <cmath>

namespace fg {

std::vector<double> interior_points(const GFGParams& p, int n, double pad) {
  const auto s = support(p);
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 0; i < n; ++i) xs.push_back(s.lo + s.width() * (pad + (1 - 2 * pad) * i / (n - 1.0)));
  return xs;
}

std::vector<double> gibbs_grid(const GFGParams& p, int n) {
  if (n < 2) fail(ErrorKind::InvalidParameters, "grid needs at least two points");
  const double s = gibbs_scale(p);
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 0; i < n; ++i) xs.push_back(s * std::pow(10.0, -2.0 + 4.0 * i / (n - 1.0)));
  return xs;
}

GibbsCheck gibbs_check(const GFGParams& p, int points) {
  GibbsCheck c;
  c.params = p;
  c.z = partition_function(p);
  c.z_quadrature = partition_function_quadrature(p).value;
  c.z_relative_error = std::abs(c.z - c.z_quadrature) / std::abs(c.z_quadrature);
  for (double x : gibbs_grid(p, points)) c.pearson_max = std::max(c.pearson_max, std::abs(pearson_residual(p, x)));
  c.pass = c.z_relative_error <= c.z_tolerance && c.pearson_max <= c.pearson_tolerance;
  return c;
}

EquilibriumCheck equilibrium_check(const GFGParams& p, bool probes, ExecutionPolicy policy) {
  EquilibriumCheck c;
  c.params = p;
  for (double x : interior_points(p, 40, 0.001)) c.el_residual_max = std::max(c.el_residual_max, std::abs(el_residual(p, x)));
  c.endpoints = endpoint_equations(p);
  std::vector<double> f;
  for (double x : interior_points(p, 30, 0.02)) f.push_back(effective_potential(p, x));
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(f.size());
  double var = 0.0;
  for (double v : f) var += (v - mean) * (v - mean);
  c.potential_sigma = std::sqrt(var / static_cast<double>(f.size()));
  c.pass = c.el_residual_max <= 1e-10 && std::abs(c.endpoints.eq0) <= 1e-8 && std::abs(c.endpoints.eq2 - 2.0) <= 1e-8 &&
           c.potential_sigma < 1e-4;
  if (probes) {
    c.maximality = maximality_probe(p, default_perturbations(), 1e-6, policy);
    c.pass = c.pass && c.maximality->pass;
  }
  return c;
}

bool identity_reads_gfg(IdentityId id) {
  switch (id) {
    case IdentityId::AddSemigroup:
    case IdentityId::ScaleLaw:
    case IdentityId::MultFormA:
    case IdentityId::MultFormB:
    case IdentityId::MeixnerShift:
      return true;
    default:
      return false;
  }
}

}  // namespace fg
