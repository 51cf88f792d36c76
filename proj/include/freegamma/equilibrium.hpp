#pragma once

#include "freegamma/gibbs.hpp"
#include "freegamma/measures.hpp"
#include "freegamma/params.hpp"
#include "freegamma/parallel.hpp"

#include <string_view>
#include <vector>

namespace fg {

/// Principal-value integral of 1/(x - y) against mu_{t,theta,lambda}, as the
/// real boundary value of the Cauchy transform. Requires alpha^- < x < alpha^+.
double hilbert_transform(const GFGParams& p, double x);

/// H(x) - V'(x)/2.
double el_residual(const GFGParams& p, double x);

struct EndpointEquations {
  double eq0 = 0.0;
  double eq2 = 0.0;
  double sum_gap = 0.0;
  double prod_gap = 0.0;
};

/// (1/pi) int V'(x) w(x) dx and (1/pi) int x V'(x) w(x) dx with the arcsine
/// weight w = ((b - x)(x - a))^{-1/2}, evaluated at the support edges, plus the
/// exact gaps in the closed forms of a + b and ab. Requires 1 <= lambda < 1 + t/theta.
EndpointEquations endpoint_equations(const GFGParams& p);
/// The same singular integrals at arbitrary endpoints 0 < a < b.
EndpointEquations endpoint_equations(const GFGParams& p, double a, double b);

/// Logarithmic potential U_m(s) = int log|x - s| dm(x) of an atomless measure.
QuadResult log_potential(const SpectralMeasure& m, double s, double tol = 1e-12);

/// int int log|x - y| da(x) db(y).
QuadResult cross_log_energy(const SpectralMeasure& a, const SpectralMeasure& b, double tol = 1e-10,
                            ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Finite convex combination of atomless compactly supported measures on (0, inf).
struct MeasureMixture {
  std::vector<double> weights;
  std::vector<SpectralMeasure> parts;

  static MeasureMixture single(SpectralMeasure m);
  void add(double weight, SpectralMeasure m);
};

struct EntropyValue {
  double logarithmic_energy = 0.0;
  double potential_term = 0.0;
  double total = 0.0;
  double error = 0.0;
};

/// int int log|x - y| dm dm - int V_{t,theta,lambda} dm. Measures with an atom
/// raise a divergence error; mass outside (0, inf) raises a domain error.
EntropyValue free_entropy(const GFGParams& p, const SpectralMeasure& m,
                          ExecutionPolicy policy = ExecutionPolicy::parallel);
EntropyValue free_entropy(const GFGParams& p, const MeasureMixture& m,
                          ExecutionPolicy policy = ExecutionPolicy::parallel);

/// 2 U_mu(x) - V(x); constant on the support of the equilibrium measure.
double effective_potential(const GFGParams& p, double x);

enum class Perturbation { dilation, translation, mixture, smoothing };
std::string_view perturbation_name(Perturbation f);

/// One probe family. Magnitudes mean: dilation factor c; translation offset
/// as a multiple of alpha^-; mixture weight of the reference law; standard
/// deviation of the log-normal multiplicative smoothing kernel.
struct PerturbationSpec {
  Perturbation family;
  std::vector<double> magnitudes;
};

std::vector<PerturbationSpec> default_perturbations();

/// Perturbed copy of mu_{t,theta,lambda}. The mixture reference is the
/// Marchenko-Pastur law pi_{theta, lambda + t/theta}; smoothing is discretized
/// by 24-point Gauss-Hermite over the log-scale.
MeasureMixture perturb(const GFGParams& p, Perturbation family, double magnitude);

struct ProbeResult {
  Perturbation family;
  double magnitude = 0.0;
  EntropyValue entropy;
  double gap = 0.0;
  bool below = false;
};

struct MaximalityReport {
  GFGParams params;
  EntropyValue candidate;
  double margin = 1e-6;
  std::vector<ProbeResult> probes;
  bool pass = false;
};

/// Evaluates the free entropy over every perturbation and checks that the
/// candidate beats each one by more than `margin`. A finite family can only
/// fail to refute maximality; it does not prove it.
MaximalityReport maximality_probe(const GFGParams& p, const std::vector<PerturbationSpec>& families = default_perturbations(),
                                  double margin = 1e-6, ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Probabilists' Gauss-Hermite rule (weight exp(-z^2/2)/sqrt(2 pi)) by Golub-Welsch.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_hermite(int n);

}  // namespace fg
