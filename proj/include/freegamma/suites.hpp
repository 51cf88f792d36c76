#pragma once

#include "freegamma/convolution.hpp"
#include "freegamma/equilibrium.hpp"
#include "freegamma/gibbs.hpp"
#include "freegamma/params.hpp"

#include <optional>
#include <vector>

namespace fg {

/// n equally spaced points covering [lo + pad w, hi - pad w] of the support.
std::vector<double> interior_points(const GFGParams& p, int n, double pad);

/// n points spaced geometrically over [s/100, 100 s], s the Gibbs scale.
std::vector<double> gibbs_grid(const GFGParams& p, int n);

struct GibbsCheck {
  GFGParams params;
  double z = 0.0;
  double z_quadrature = 0.0;
  double z_relative_error = 0.0;
  double pearson_max = 0.0;
  double z_tolerance = 1e-6;
  double pearson_tolerance = 1e-10;
  bool pass = false;
};

GibbsCheck gibbs_check(const GFGParams& p, int points = 100);

struct EquilibriumCheck {
  GFGParams params;
  double el_residual_max = 0.0;
  EndpointEquations endpoints;
  double potential_sigma = 0.0;
  std::optional<MaximalityReport> maximality;
  bool pass = false;
};

/// Euler-Lagrange residual on 40 interior points, the endpoint integrals, the
/// spread of the effective potential over 30 points, and (optionally) the
/// maximality probe. Thresholds: 1e-10, 1e-8, 1e-4.
EquilibriumCheck equilibrium_check(const GFGParams& p, bool probes, ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Identities whose parameter set carries a gfg triple that a caller may override.
bool identity_reads_gfg(IdentityId id);

}  // namespace fg
