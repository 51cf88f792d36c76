#pragma once

#include "freegamma/error.hpp"
#include "freegamma/numeric.hpp"
#include "freegamma/parallel.hpp"
#include "freegamma/params.hpp"
#include "freegamma/transforms.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fg {

// ---------------------------------------------------------------------------
// Parameter dictionaries. All maps are exact on rational input.

/// A law written as D_scale(base): the law of scale * X with X ~ base.
template <class P>
struct Scaled {
  Rational scale{1};
  P params;
};

struct ExactMPParams {
  Rational theta{1};
  Rational lambda{1};
  MPParams to_double() const { return MPParams::make(fg::to_double(theta), fg::to_double(lambda)); }
};

struct ExactFbpParams {
  Rational a{1};
  Rational b{2};
};

/// eta(t, theta) = mu_{t theta, theta, 1}.
ExactGFGParams map_eta(const Rational& t, const Rational& theta);
/// fb'(a, b) = mu_{a/(b-1), a/(b-1)^2, (a+b-1)/a}, a > 0, b > 1.
ExactGFGParams map_fbp_to_gfg(const Rational& a, const Rational& b);
/// mu_{t,theta,lambda} = D_{t(lambda-1)}(fb'(q, 1 + t/theta)), lambda > 1.
Scaled<ExactFbpParams> map_gfg_to_fbp(const ExactGFGParams& p);
/// mu^{<-1>} = D_scale(mu_{t',theta',lambda'}), 1 < lambda < 1 + t/theta.
Scaled<ExactGFGParams> map_reversed(const ExactGFGParams& p);
/// mu_{t,theta,1} = (pi_{theta/t^2, 1 + t/theta})^{<-1>}; the returned law is the one being reversed.
ExactMPParams map_inverse_mp_of_gfg1(const ExactGFGParams& p);
/// tau_P = D_scale(tau_p^{boxplus 2^n}) with tau_p = pi_{p^{-2}, 1+p} and P = 2^n p + 2^n - 1.
struct InverseSumMap {
  Rational scale;
  Rational P;
};
InverseSumMap map_inverse_sum(const Rational& p, unsigned n);

/// Parameters of D_c(mu_{t,theta,lambda}).
ExactGFGParams dilate(const ExactGFGParams& p, const Rational& c);
GFGParams dilate(const GFGParams& p, double c);

/// Textual dispatcher used by the command line: kind is one of eta,
/// fbp_to_gfg, gfg_to_fbp, reversed, inverse_mp_of_gfg1, inverse_sum.
struct ParamMapResult {
  std::string family;
  Rational scale{1};
  std::vector<std::pair<std::string, Rational>> values;
};
ParamMapResult map_params(std::string_view kind, const std::vector<Rational>& args);

// ---------------------------------------------------------------------------
// Identity catalog.

enum class IdentityId {
  AddSemigroup,
  ScaleLaw,
  MultFormA,
  MultFormB,
  MeixnerShift,
  RatioLaw,
  InvSumLaw,
  HalfSumCor,
  FreeBetaS,
  FreeBetaRs,
  SReversal,
};

inline constexpr std::array<IdentityId, 11> kIdentityCatalog{
    IdentityId::AddSemigroup, IdentityId::ScaleLaw,   IdentityId::MultFormA,  IdentityId::MultFormB,
    IdentityId::MeixnerShift, IdentityId::RatioLaw,   IdentityId::InvSumLaw,  IdentityId::HalfSumCor,
    IdentityId::FreeBetaS,    IdentityId::FreeBetaRs, IdentityId::SReversal};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

/// Union of the parameters used across the catalog; each identity reads the
/// fields it needs (gfg for the gfg laws, p and q for the Meixner-type gamma
/// ratios, n and m for the reciprocal sums, mp for S_REVERSAL).
struct IdentityParams {
  GFGParams gfg;
  double p = 1.0;
  double q = 1.0;
  unsigned n = 1;
  unsigned m = 2;
  MPParams mp;

  std::string describe(IdentityId id) const;
};

struct IdentityReport {
  IdentityId id;
  IdentityParams params;
  TransformGrid grid;
  double max_abs_deviation = 0.0;
  double tolerance = 1e-10;
  bool pass = false;
  std::vector<std::string> warnings;
};

/// Checks the identity pointwise on `grid` (upper half-plane for Cauchy
/// transforms, closed lower half-plane for R-transforms, a real segment for
/// S-transforms).
IdentityReport verify_identity(IdentityId id, const IdentityParams& params, const TransformGrid& grid,
                               double tolerance = 1e-10, ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Grid of `n` points inside the identity's common domain, kept 1e-3 away
/// from branch points and domain ends.
TransformGrid default_grid(IdentityId id, const IdentityParams& params, std::size_t n = 50);

/// Ten parameter sets inside the identity's validity region.
std::vector<IdentityParams> default_parameter_sets(IdentityId id);

IdentityReport verify_identity(IdentityId id, const IdentityParams& params, double tolerance = 1e-10,
                               ExecutionPolicy policy = ExecutionPolicy::parallel);

/// The two roots of (3p+2)^2 z^2 - 2 p^5 z + p^8, where z S(z) of the free
/// beta law would need to be real for free infinite divisibility.
struct FidWitness {
  std::array<Complex, 2> root_pair;
  double residual = 0.0;
  bool is_fid = false;
};

FidWitness free_beta_fid_witness(double p);

}  // namespace fg
