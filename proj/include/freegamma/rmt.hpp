#pragma once

#include "freegamma/convolution.hpp"
#include "freegamma/empirical.hpp"
#include "freegamma/parallel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>

namespace fg {

/// Reproducible random stream: the same (seed, stream) pair yields the same
/// sequence on every run and under every thread count.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::mt19937_64 engine() const;
  RngStream substream(std::uint64_t k) const { return {seed, stream * 1000003ULL + k + 1}; }
};

using Matrix = Eigen::MatrixXd;

/// (theta/N) X X^T with X an N x round(lambda N) standard Gaussian matrix.
Matrix wishart_matrix(const MPParams& q, int N, RngStream rng);

/// Eigenvalues of a Wishart matrix, clamped at zero below 1e-10 of the largest.
EmpiricalDistribution sample_mp_esd(const MPParams& q, int N, RngStream rng);

/// Haar-distributed real orthogonal matrix (QR of a Gaussian matrix with the
/// signs of diag(R) absorbed into Q).
Matrix haar_orthogonal(int N, std::mt19937_64& engine);

/// Sorted eigenvalues of a symmetric matrix.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Spectrum of A + U B U^T. Since the result depends on A and B only through
/// their spectra, the inputs may be given either as matrices or as samples.
EmpiricalDistribution free_add_sample(const Matrix& A, const Matrix& B, RngStream rng);
EmpiricalDistribution free_add_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b, RngStream rng);

/// Spectrum of A^{1/2} U B U^T A^{1/2} for positive semidefinite A, B.
EmpiricalDistribution free_mult_sample(const Matrix& A, const Matrix& B, RngStream rng);
EmpiricalDistribution free_mult_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b, RngStream rng);

/// The catalog identities that have a random-matrix realization.
inline constexpr std::array<IdentityId, 6> kRmtIdentities{IdentityId::AddSemigroup, IdentityId::MultFormB,
                                                          IdentityId::MeixnerShift, IdentityId::RatioLaw,
                                                          IdentityId::InvSumLaw,    IdentityId::MultFormA};

/// One realization of an identity: the empirical spectrum of the matrix
/// construction and the closed-form law it should approach.
struct RmtRealization {
  EmpiricalDistribution esd;
  SpectralMeasure target;
  /// Atom of the target at zero, estimated by the fraction of eigenvalues
  /// below 1e-6 alpha^+ (present when the target has an atom).
  std::optional<double> atom_fraction;
};

/// ADD_SEMIGROUP: two samples of mu_{1,1,1}, target mu_{2,1,1}.
/// MULT_FORM_B: mu_{1,1,1} times pi_{1,1}, target mu_{1,1,2}.
/// MEIXNER_SHIFT: mu_{1,1,1} shifted by -1, target the free Meixner law (1, 2, 1).
/// RATIO_LAW: eta(1,1) times the reciprocal of eta(1,1), target D_2(mu_{1,1,3/2}).
/// INV_SUM_LAW: two samples of tau_1 = pi_{1,2}, target D_9(tau_3) = pi_{1,4}.
/// MULT_FORM_A: 2 pi_{1,1/2} times pi_{1,2}^{<-1>}, target mu_{1,1,3} (atom 1/2).
RmtRealization rmt_realization(IdentityId id, int N, std::uint64_t seed);

struct RmtVerdict {
  IdentityId id;
  int N = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<Comparison> comparisons;
  std::vector<double> atom_fractions;
  double ks_threshold = 0.07;
  double atom_target = 0.0;
  double atom_tolerance = 0.03;
  bool pass = false;
};

/// Majority vote over seeds on ks < threshold (and, when the target has an
/// atom, on |atom fraction - atom| <= atom_tolerance). Seeds run in parallel.
RmtVerdict verify_rmt(IdentityId id, int N, const std::vector<std::uint64_t>& seeds, double ks_threshold = 0.07,
                      ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace fg
