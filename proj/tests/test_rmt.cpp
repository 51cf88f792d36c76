#include <doctest.h>

#include "freegamma/rmt.hpp"

#include <cmath>
#include <numeric>

using namespace fg;

TEST_CASE("Wishart spectra approach the Marchenko-Pastur law") {
  const auto q = MPParams::make(1, 1);
  const auto e = sample_mp_esd(q, 2000, {42, 0});
  CHECK(e.samples.size() == 2000);
  CHECK(std::is_sorted(e.samples.begin(), e.samples.end()));
  CHECK(e.samples.front() >= 0.0);
  CHECK(compare(e, mp_measure(q)).ks < 0.05);
}

TEST_CASE("Wishart normalization gives mean theta lambda") {
  const auto q = MPParams::make(2, 1);
  const auto e = sample_mp_esd(q, 2000, {7, 0});
  const double mean = std::accumulate(e.samples.begin(), e.samples.end(), 0.0) / 2000.0;
  double var = 0.0;
  for (double x : e.samples) var += (x - mean) * (x - mean);
  var /= 1999.0;
  // Eigenvalues are strongly repelling, so the naive standard error overstates the spread.
  CHECK(std::abs(mean - 2.0) < 3.0 * std::sqrt(var / 2000.0));
}

TEST_CASE("degenerate one by one Wishart") {
  const auto e = sample_mp_esd(MPParams::make(1, 1), 1, {3, 0});
  REQUIRE(e.samples.size() == 1);
  CHECK(e.samples[0] >= 0.0);
  CHECK(std::isfinite(e.samples[0]));
}

TEST_CASE("rank-deficient Wishart has an atom at zero") {
  const auto e = sample_mp_esd(MPParams::make(1, 0.5), 400, {5, 0});
  CHECK(e.fraction_below(0.0) == doctest::Approx(0.5));
}

TEST_CASE("spectral maps") {
  const auto e = sample_mp_esd(MPParams::make(1, 2), 100, {1, 0});
  const auto same = esd_map(e, esd::Affine{1.0, 0.0});
  CHECK(same.samples == e.samples);
  const auto rec = esd_map(e, esd::Reciprocal{});
  CHECK(rec.samples.front() == doctest::Approx(1.0 / e.samples.back()));
  auto zero = EmpiricalDistribution::make({0.0, 1.0}, 0, "x", 2);
  CHECK_THROWS_AS(esd_map(zero, esd::Reciprocal{}), Error);
}

TEST_CASE("reciprocal Wishart realizes the lambda one family") {
  const double t = 1.0, theta = 1.0;
  const auto e = esd_map(sample_mp_esd(MPParams::make(theta / (t * t), 1 + t / theta), 800, {9, 0}), esd::Reciprocal{});
  CHECK(compare(e, gfg_measure(GFGParams::make(t, theta, 1))).ks < 0.05);
}

TEST_CASE("trivial free sums and products") {
  const int N = 60;
  const auto a = sample_mp_esd(MPParams::make(1, 2), N, {11, 0});
  const auto zero = EmpiricalDistribution::make(std::vector<double>(N, 0.0), 0, "zero", N);
  const auto one = EmpiricalDistribution::make(std::vector<double>(N, 1.0), 0, "identity", N);
  const auto s = free_add_sample(a, zero, {11, 1});
  const auto p = free_mult_sample(a, one, {11, 2});
  for (int i = 0; i < N; ++i) {
    CHECK(s.samples[i] == doctest::Approx(a.samples[i]).epsilon(1e-12));
    CHECK(p.samples[i] == doctest::Approx(a.samples[i]).epsilon(1e-12));
  }
  const Matrix A = wishart_matrix(MPParams::make(1, 2), N, {11, 3});
  const auto sm = free_add_sample(A, Matrix::Zero(N, N), {11, 4});
  const auto ev = symmetric_eigenvalues(A);
  for (int i = 0; i < N; ++i) CHECK(sm.samples[i] == doctest::Approx(ev[i]).epsilon(1e-10));
  const auto pm = free_mult_sample(A, Matrix::Identity(N, N), {11, 5});
  for (int i = 0; i < N; ++i) CHECK(pm.samples[i] == doctest::Approx(ev[i]).epsilon(1e-9));
}

TEST_CASE("matrix and spectrum inputs give the same law") {
  const int N = 300;
  const Matrix A = wishart_matrix(MPParams::make(1, 2), N, {21, 0});
  const Matrix B = wishart_matrix(MPParams::make(1, 3), N, {21, 1});
  const auto m = free_mult_sample(A, B, {21, 2});
  const auto a = EmpiricalDistribution::make(symmetric_eigenvalues(A), 21, "A", N);
  const auto b = EmpiricalDistribution::make(symmetric_eigenvalues(B), 21, "B", N);
  const auto s = free_mult_sample(a, b, {21, 2});
  auto mean = [](const EmpiricalDistribution& e) {
    return std::accumulate(e.samples.begin(), e.samples.end(), 0.0) / static_cast<double>(e.samples.size());
  };
  // The normalized trace of the product is mean(A) mean(B) up to O(1/sqrt(N)) fluctuations.
  const double expected = mean(a) * mean(b);
  CHECK(mean(m) == doctest::Approx(expected).epsilon(0.03));
  CHECK(mean(s) == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("input validation") {
  const auto a = EmpiricalDistribution::make({1.0, 2.0}, 0, "a", 2);
  const auto b = EmpiricalDistribution::make({1.0, 2.0, 3.0}, 0, "b", 3);
  CHECK_THROWS_AS(free_add_sample(a, b, {0, 0}), Error);
  const auto neg = EmpiricalDistribution::make({-1.0, 2.0}, 0, "neg", 2);
  try {
    free_mult_sample(neg, a, {0, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveSemidefinite);
  }
  try {
    free_add_sample(a, b, {0, 0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("Haar matrices are orthogonal") {
  auto engine = RngStream{3, 3}.engine();
  const Matrix U = haar_orthogonal(50, engine);
  CHECK((U.transpose() * U - Matrix::Identity(50, 50)).norm() < 1e-12);
}

TEST_CASE("comparison against an exact quantile sample") {
  const auto m = gfg_measure(GFGParams::make(1, 1, 1));
  const CdfTable table(m);
  std::vector<double> xs;
  const int n = 2000;
  for (int i = 0; i < n; ++i) xs.push_back(table.quantile((i + 0.5) / n));
  const auto c = compare(EmpiricalDistribution::make(xs, 0, "quantiles", n), m, table);
  CHECK(c.ks <= 0.5 / n + 1e-9);
  CHECK(c.w1 < 1e-3);
  for (double g : c.moment_gaps) CHECK(g < 1e-2);
}

TEST_CASE("atom is matched through ties") {
  const auto m = gfg_measure(GFGParams::make(1, 1, 3));
  const CdfTable table(m);
  std::vector<double> xs(500, 0.0);
  for (int i = 0; i < 500; ++i) xs.push_back(table.quantile(0.5 + (i + 0.5) / 1000.0));
  const auto c = compare(EmpiricalDistribution::make(xs, 0, "atom", 1000), m, table);
  CHECK(c.ks < 1e-3);
}

TEST_CASE("determinism across runs and thread counts") {
  const auto a = sample_mp_esd(MPParams::make(1, 1.5), 200, {77, 4});
  const auto b = sample_mp_esd(MPParams::make(1, 1.5), 200, {77, 4});
  CHECK(a.samples == b.samples);
  const auto c = sample_mp_esd(MPParams::make(1, 1.5), 200, {77, 5});
  CHECK(a.samples != c.samples);

  const int saved = thread_count();
  set_thread_count(1);
  const auto v1 = verify_rmt(IdentityId::AddSemigroup, 120, {1, 2, 3}, 0.2, ExecutionPolicy::parallel);
  set_thread_count(4);
  const auto v4 = verify_rmt(IdentityId::AddSemigroup, 120, {1, 2, 3}, 0.2, ExecutionPolicy::parallel);
  const auto vs = verify_rmt(IdentityId::AddSemigroup, 120, {1, 2, 3}, 0.2, ExecutionPolicy::serial);
  set_thread_count(saved);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(v1.comparisons[i].ks == v4.comparisons[i].ks);
    CHECK(v1.comparisons[i].w1 == vs.comparisons[i].w1);
  }
}

TEST_CASE("KS distance shrinks with the dimension") {
  const auto q = MPParams::make(1, 2);
  const auto m = mp_measure(q);
  int improved = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    const double small = compare(sample_mp_esd(q, 500, {seed, 0}), m).ks;
    const double large = compare(sample_mp_esd(q, 2000, {seed, 0}), m).ks;
    if (large < small) ++improved;
  }
  CHECK(improved >= 2);
}

TEST_CASE("measure-level identities at moderate dimension") {
  for (auto id : kRmtIdentities) {
    const auto v = verify_rmt(id, 300, {1, 2, 3});
    INFO(identity_name(id));
    CHECK(v.pass);
  }
}
