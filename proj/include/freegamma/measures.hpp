#pragma once

#include "freegamma/params.hpp"
#include "freegamma/parallel.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace fg {

/// Edges alpha^- and alpha^+ of the absolutely continuous part.
SupportInterval support(const GFGParams& p);

/// Mass of the atom at 0 (nonzero only when lambda > 1 + t/theta).
double atom_mass(const GFGParams& p);

double gfg_density(const GFGParams& p, double x);
/// Marchenko-Pastur density k_{theta,lambda} (without the atom).
double mp_density(const MPParams& q, double x);
/// Free Levy density t k_{theta,lambda}(x) / x of mu_{t,theta,lambda}.
double levy_gfg_density(const GFGParams& p, double x);
/// Density of the free beta prime law fb'(a, b), a > 0, b > 1.
double fbp_density(double a, double b, double x);
/// Free Levy density of fb'(a, b).
double fbp_levy_density(double a, double b, double x);
/// Density of the reversed Marchenko-Pastur law (pi_{theta,lambda})^{<-1>}, lambda >= 1.
double inverse_mp_density(const MPParams& q, double x);
/// Absolutely continuous part of the centered free Meixner law.
double meixner_density(const FreeMeixnerParams& m, double x);
SupportInterval meixner_support(const FreeMeixnerParams& m);

namespace family {
struct Gfg { GFGParams p; };
struct Mp { MPParams q; };
struct LevyGfg { GFGParams p; };
struct Fbp { double a; double b; };
struct FbpLevy { double a; double b; };
struct InverseMp { MPParams q; };
}  // namespace family

using DensityFamily = std::variant<family::Gfg, family::Mp, family::LevyGfg, family::Fbp, family::FbpLevy, family::InverseMp>;

double density(const DensityFamily& fam, double x);

/// Unique maximizer of the density for 1 <= lambda <= 1 + t/theta.
double mode(const GFGParams& p);

/// The cubic whose root in (alpha^-, alpha^+) is the mode.
double mode_cubic(const GFGParams& p, double x);

struct StructuralPredicates {
  bool freely_selfdecomposable;
  bool unimodal;
  bool density_bounded;
};

StructuralPredicates structural_predicates(const GFGParams& p);

/// Atom at 0 plus a density on a compact interval.
struct SpectralMeasure {
  double atom0 = 0.0;
  std::function<double(double)> density;
  SupportInterval support;
  std::string label;

  double density_at(double x) const {
    return (x < support.lo || x > support.hi) ? 0.0 : density(x);
  }
};

SpectralMeasure gfg_measure(const GFGParams& p);
SpectralMeasure mp_measure(const MPParams& q);
/// Requires lambda > 1 so that the support is compact.
SpectralMeasure inverse_mp_measure(const MPParams& q);
SpectralMeasure meixner_measure(const FreeMeixnerParams& m);
/// Point mass at c smeared into a semicircle of radius `width`.
SpectralMeasure narrow_measure(double c, double width);
/// Law of c X when X has law m (c > 0).
SpectralMeasure dilate(const SpectralMeasure& m, double c);
/// Law of X + s when X has law m and m has no atom.
SpectralMeasure translate(const SpectralMeasure& m, double s);

/// Absolutely continuous mass of m, integrated over the support.
double total_mass(const SpectralMeasure& m, double tol = 1e-12);

/// Right-continuous distribution function by adaptive quadrature.
double cdf(const SpectralMeasure& m, double x, double tol = 1e-12);

/// n-th moment of m by quadrature.
double moment_by_quadrature(const SpectralMeasure& m, int n, double tol = 1e-13);

/// Tabulated distribution function in the arcsine variable
/// u = asin((2x - lo - hi)/(hi - lo)), interpolated by cubic Hermite
/// polynomials on exact segment integrals.
class CdfTable {
 public:
  CdfTable(const SpectralMeasure& m, std::size_t segments = 1024,
           ExecutionPolicy policy = ExecutionPolicy::parallel);

  double operator()(double x) const;
  /// Left limit F(x-), differing from F(x) only at the atom.
  double left_limit(double x) const;
  double quantile(double prob) const;
  double atom() const { return atom_; }
  double ac_mass() const { return cumulative_.back(); }
  const SupportInterval& support() const { return support_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  double ac_part(double x) const;

  double atom_;
  SupportInterval support_;
  double center_;
  double half_;
  double step_;
  std::vector<double> cumulative_;
  std::vector<double> slope_;
};

}  // namespace fg
