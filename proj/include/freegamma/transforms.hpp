#pragma once

#include "freegamma/measures.hpp"
#include "freegamma/numeric.hpp"
#include "freegamma/params.hpp"

#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace fg {

/// Square root with arg(w) taken in (0, 2pi): Im >= 0 always, cut along the
/// positive reals. On the cut itself the value is +sqrt(w), the limit from
/// the upper half-plane in w; principal_sqrt(0) = 0.
Complex principal_sqrt(Complex w);

/// Which side of the real z-axis a boundary value is taken from.
enum class Side { upper = 1, lower = -1 };

/// Boundary value of principal_sqrt(w(z)) at a real point z, when w(z) is
/// real and w'(z) = dw is known: the side decides on which rim of the cut
/// w(z +- i0) lands.
Complex boundary_sqrt(double w, double dw, Side side);

/// Region of a transform evaluation grid.
enum class Region { upper_half_plane, negative_real_segment, lower_half_plane };

struct TransformGrid {
  std::vector<Complex> points;
  Region region;
};

/// n points on the real segment [lo, hi].
TransformGrid real_grid(double lo, double hi, std::size_t n);
/// Points x + iy with x uniform in [xlo, xhi] and y cycling through `heights`.
TransformGrid upper_grid(double xlo, double xhi, std::vector<double> heights, std::size_t n);

Complex cauchy_transform(const GFGParams& p, Complex z);
Complex meixner_cauchy(const FreeMeixnerParams& m, Complex z);

struct InversionOptions {
  std::vector<double> ladder{1e-3, 1e-4, 1e-5};
  double tol = 1e-4;
};

struct InversionResult {
  double value = 0.0;
  double error = 0.0;
};

/// lim_{eps -> 0} -Im G(x + i eps)/pi by two-level Richardson extrapolation
/// over a geometric ladder of eps values.
InversionResult stieltjes_invert(const std::function<Complex(Complex)>& G, double x, const InversionOptions& opts = {});

namespace rfam {
struct Gfg { GFGParams p; };
struct Mp { MPParams q; };
/// Background driving process Z_t of mu_{1,theta,1}.
struct Bdlp { double t; double theta; };
/// Law of the free beta variable B^{(p)}.
struct FreeBeta { double p; };
}  // namespace rfam

using RFamily = std::variant<rfam::Gfg, rfam::Mp, rfam::Bdlp, rfam::FreeBeta>;

/// R-transform R(z) = sum_n kappa_n z^n. gfg, mp and bdlp are evaluated on the
/// closed lower half-plane (real points use the limit from below); free_beta
/// on its real interval (-p^3/(2(p+1)), 0), with the boundary value from above.
Complex r_transform(const RFamily& fam, Complex z);

/// The t-free factor of the gfg R-transform: R_{t,theta,lambda} = t * r_gfg_unit.
Complex r_gfg_unit(double theta, double lambda, Complex z);

/// Power-series germ of an R-transform at 0, with its radius of convergence.
struct AnalyticGerm {
  std::function<Complex(Complex)> f;
  double radius;
};

AnalyticGerm r_germ(const RFamily& fam);

namespace sfam {
struct Gfg { GFGParams p; };
struct Mp { MPParams q; };
struct InverseMp { MPParams q; };
struct Fbp { double a; double b; };
struct FreeBeta { double p; };
struct Reversed;
struct Dilated;
}  // namespace sfam

using SFamily = std::variant<sfam::Gfg, sfam::Mp, sfam::InverseMp, sfam::Fbp, sfam::FreeBeta,
                             std::shared_ptr<sfam::Reversed>, std::shared_ptr<sfam::Dilated>>;

namespace sfam {
struct Reversed { SFamily base; };
struct Dilated { double c; SFamily base; };
}  // namespace sfam

SFamily reversed(SFamily base);
SFamily dilated(double c, SFamily base);

/// Lower end -1 + (atom at 0) of the S-transform's real domain.
double s_domain_lower(const SFamily& fam);

/// S-transform on (-1 + atom, 0]; z = 0 returns the limit 1/mean.
double s_transform(const SFamily& fam, double z);

struct NumericSOptions {
  double quad_tol = 1e-13;
  double solve_tol = 1e-14;
  int max_iterations = 200;
};

/// S-transform of an arbitrary compactly supported measure on [0, inf) via
/// quadrature of Psi(u) = int ux/(1-ux) dmu(x) on u < 0 and a safeguarded
/// Newton inversion of Psi.
double numeric_s_transform(const SpectralMeasure& m, double z, const NumericSOptions& opts = {});

/// Psi_mu(u) and its derivative for real u < 0.
std::pair<double, double> psi_transform(const SpectralMeasure& m, double u, double tol = 1e-13);

/// |R(z S(z)) - z|.
double functional_identity_rs(const GFGParams& p, double z);
double functional_identity_rs(const MPParams& q, double z);

}  // namespace fg
