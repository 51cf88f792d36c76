#include "freegamma/rmt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace fg {

std::mt19937_64 RngStream::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

namespace {

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& engine) {
  std::normal_distribution<double> normal;
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal(engine);
  return g;
}

// Zeroes eigenvalues within 1e-10 of the spectral scale; rejects clearly negative ones.
void clamp_psd(std::vector<double>& x, const char* what) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (double& v : x) {
    if (std::abs(v) <= 1e-10 * scale) v = 0.0;
    else if (v < 0.0) fail(ErrorKind::NotPositiveSemidefinite, std::string(what) + " has a negative eigenvalue", v);
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b)
    fail(ErrorKind::DimensionMismatch,
         "matrix dimensions differ: " + std::to_string(a) + " and " + std::to_string(b));
}

std::vector<double> eigen_decompose(const Matrix& m, Matrix* vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorKind::EigensolverFailure, "symmetric eigensolver did not converge");
  if (vectors) *vectors = solver.eigenvectors();
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// U diag(b) U^T for a fresh Haar U.
Matrix conjugated_diagonal(const std::vector<double>& b, std::mt19937_64& engine) {
  const int N = static_cast<int>(b.size());
  const Matrix U = haar_orthogonal(N, engine);
  const Eigen::Map<const Eigen::VectorXd> bv(b.data(), N);
  Matrix M = (U * bv.asDiagonal()) * U.transpose();
  return 0.5 * (M + M.transpose());
}

}  // namespace

Matrix wishart_matrix(const MPParams& q, int N, RngStream rng) {
  if (N < 1) fail(ErrorKind::InvalidParameters, "matrix dimension must be positive");
  const int M = static_cast<int>(std::lround(q.lambda * N));
  if (M < 1) fail(ErrorKind::InvalidParameters, "lambda N must be at least 1");
  auto engine = rng.engine();
  const Matrix X = gaussian_matrix(N, M, engine);
  Matrix W = Matrix::Zero(N, N);
  W.selfadjointView<Eigen::Lower>().rankUpdate(X, q.theta / N);
  return W.selfadjointView<Eigen::Lower>();
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) { return eigen_decompose(m, nullptr); }

EmpiricalDistribution sample_mp_esd(const MPParams& q, int N, RngStream rng) {
  auto ev = symmetric_eigenvalues(wishart_matrix(q, N, rng));
  clamp_psd(ev, "Wishart matrix");
  return EmpiricalDistribution::make(std::move(ev), rng.seed, "wishart(" + q.describe() + ")", N);
}

Matrix haar_orthogonal(int N, std::mt19937_64& engine) {
  const Matrix G = gaussian_matrix(N, N, engine);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const auto& R = qr.matrixQR();
  for (int j = 0; j < N; ++j)
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  return Q;
}

EmpiricalDistribution free_add_sample(const Matrix& A, const Matrix& B, RngStream rng) {
  require_same_dim(A.rows(), B.rows());
  auto engine = rng.engine();
  const Matrix U = haar_orthogonal(static_cast<int>(A.rows()), engine);
  Matrix M = A + U * B * U.transpose();
  M = 0.5 * (M + M.transpose());
  return EmpiricalDistribution::make(symmetric_eigenvalues(M), rng.seed, "A + U B U^T", static_cast<int>(A.rows()));
}

EmpiricalDistribution free_add_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b, RngStream rng) {
  require_same_dim(a.samples.size(), b.samples.size());
  auto engine = rng.engine();
  Matrix M = conjugated_diagonal(b.samples, engine);
  for (std::size_t i = 0; i < a.samples.size(); ++i) M(i, i) += a.samples[i];
  return EmpiricalDistribution::make(symmetric_eigenvalues(M), rng.seed,
                                     "(" + a.construction + ") + U (" + b.construction + ") U^T",
                                     static_cast<int>(a.samples.size()));
}

EmpiricalDistribution free_mult_sample(const Matrix& A, const Matrix& B, RngStream rng) {
  require_same_dim(A.rows(), B.rows());
  Matrix V;
  auto a = eigen_decompose(A, &V);
  clamp_psd(a, "A");
  auto b = symmetric_eigenvalues(B);
  clamp_psd(b, "B");
  Eigen::VectorXd root(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) root[i] = std::sqrt(a[i]);
  const Matrix S = V * root.asDiagonal() * V.transpose();
  auto engine = rng.engine();
  const Matrix U = haar_orthogonal(static_cast<int>(A.rows()), engine);
  Matrix M = S * U * B * U.transpose() * S;
  M = 0.5 * (M + M.transpose());
  auto ev = symmetric_eigenvalues(M);
  clamp_psd(ev, "A^{1/2} U B U^T A^{1/2}");
  return EmpiricalDistribution::make(std::move(ev), rng.seed, "A^1/2 U B U^T A^1/2", static_cast<int>(A.rows()));
}

EmpiricalDistribution free_mult_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b, RngStream rng) {
  require_same_dim(a.samples.size(), b.samples.size());
  auto av = a.samples;
  auto bv = b.samples;
  clamp_psd(av, "A");
  clamp_psd(bv, "B");
  auto engine = rng.engine();
  Matrix M = conjugated_diagonal(bv, engine);
  const std::size_t N = av.size();
  std::vector<double> root(N);
  for (std::size_t i = 0; i < N; ++i) root[i] = std::sqrt(av[i]);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i) M(i, j) *= root[i] * root[j];
  auto ev = symmetric_eigenvalues(M);
  clamp_psd(ev, "A^{1/2} U B U^T A^{1/2}");
  return EmpiricalDistribution::make(std::move(ev), rng.seed,
                                     "(" + a.construction + ")^1/2 U (" + b.construction + ") U^T (.)^1/2",
                                     static_cast<int>(N));
}

RmtRealization rmt_realization(IdentityId id, int N, std::uint64_t seed) {
  const RngStream base{seed, 0};
  const RngStream sa = base.substream(0), sb = base.substream(1), su = base.substream(2);
  const auto pi12 = MPParams::make(1.0, 2.0);
  auto inverse_wishart = [&](RngStream s) { return esd_map(sample_mp_esd(pi12, N, s), esd::Reciprocal{}); };

  switch (id) {
    case IdentityId::AddSemigroup:
      return {free_add_sample(inverse_wishart(sa), inverse_wishart(sb), su), gfg_measure(GFGParams::make(2, 1, 1)), {}};
    case IdentityId::MultFormB:
      return {free_mult_sample(inverse_wishart(sa), sample_mp_esd(MPParams::make(1, 1), N, sb), su),
              gfg_measure(GFGParams::make(1, 1, 2)), {}};
    case IdentityId::MeixnerShift:
      return {esd_map(inverse_wishart(sa), esd::Affine{1.0, -1.0}), meixner_measure(FreeMeixnerParams::make(1, 2, 1)), {}};
    case IdentityId::RatioLaw:
      return {free_mult_sample(inverse_wishart(sa), sample_mp_esd(pi12, N, sb), su),
              dilate(gfg_measure(GFGParams::make(1, 1, 1.5)), 2.0), {}};
    case IdentityId::InvSumLaw:
      return {free_add_sample(sample_mp_esd(pi12, N, sa), sample_mp_esd(pi12, N, sb), su),
              mp_measure(MPParams::make(1, 4)), {}};
    case IdentityId::MultFormA: {
      const auto p = GFGParams::make(1, 1, 3);
      auto prod = free_mult_sample(sample_mp_esd(MPParams::make(1, 0.5), N, sa), inverse_wishart(sb), su);
      auto esd = esd_map(prod, esd::Affine{p.shift(), 0.0});
      const double frac = esd.fraction_below(1e-6 * support(p).hi);
      return {std::move(esd), gfg_measure(p), frac};
    }
    default:
      fail(ErrorKind::Domain, std::string(identity_name(id)) + " has no random-matrix realization");
  }
}

RmtVerdict verify_rmt(IdentityId id, int N, const std::vector<std::uint64_t>& seeds, double ks_threshold,
                      ExecutionPolicy policy) {
  RmtVerdict v;
  v.id = id;
  v.N = N;
  v.seeds = seeds;
  v.ks_threshold = ks_threshold;
  struct Outcome {
    Comparison cmp;
    std::optional<double> atom;
    double target_atom;
  };
  const auto outcomes = map_indices(policy, seeds.size(), [&](std::size_t i) {
    auto r = rmt_realization(id, N, seeds[i]);
    return Outcome{compare(r.esd, r.target), r.atom_fraction, r.target.atom0};
  });
  std::size_t good = 0;
  for (const auto& o : outcomes) {
    v.comparisons.push_back(o.cmp);
    bool ok = o.cmp.ks < ks_threshold;
    if (o.atom) {
      v.atom_fractions.push_back(*o.atom);
      v.atom_target = o.target_atom;
      ok = ok && std::abs(*o.atom - o.target_atom) <= v.atom_tolerance;
    }
    if (ok) ++good;
  }
  v.pass = 2 * good > seeds.size();
  return v;
}

}  // namespace fg
