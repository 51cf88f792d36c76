#include "freegamma/cumulants.hpp"

#include <numbers>

namespace fg {

unsigned BlockProfile::blocks() const {
  unsigned m = 0;
  for (unsigned ri : r) m += ri;
  return m;
}

unsigned BlockProfile::elements() const {
  unsigned n = 0;
  for (std::size_t i = 0; i < r.size(); ++i) n += static_cast<unsigned>(i + 1) * r[i];
  return n;
}

Integer BlockProfile::weight() const {
  const unsigned n = elements();
  const unsigned m = blocks();
  Integer denom = factorial(n - m + 1);
  for (unsigned ri : r) denom *= factorial(ri);
  return factorial(n) / denom;
}

namespace {

void profiles_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& r, std::vector<BlockProfile>& out) {
  if (remaining == 0) {
    out.push_back({r});
    return;
  }
  for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
    for (unsigned count = remaining / part; count >= 1; --count) {
      r[part - 1] = count;
      profiles_rec(remaining - count * part, part - 1, r, out);
      r[part - 1] = 0;
    }
  }
}

}  // namespace

std::vector<BlockProfile> block_profiles(unsigned n) {
  detail::check_order(n);
  std::vector<BlockProfile> out;
  std::vector<unsigned> r(n, 0);
  profiles_rec(n, n, r, out);
  return out;
}

Integer narayana(unsigned n, unsigned r) {
  if (r < 1 || r > n) return 0;
  return binomial(n, r) * binomial(n, r - 1) / n;
}

double process_correlation(double s, double t, double theta, double lambda) {
  if (!(s > 0.0) || !(t > 0.0)) fail(ErrorKind::InvalidParameters, "times must be positive");
  const double lo = std::min(s, t), hi = std::max(s, t);
  const double cov = free_cumulant(lo, theta, lambda, 2);
  const double var_lo = free_cumulant(lo, theta, lambda, 2);
  const double var_hi = free_cumulant(hi, theta, lambda, 2);
  return cov / std::sqrt(var_lo * var_hi);
}

SeriesResult series_oracle(const std::function<Complex(Complex)>& f, unsigned n, double radius, double tol) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "order must be >= 1");
  if (!(radius > 0.0)) fail(ErrorKind::InvalidParameters, "radius of analyticity must be positive");
  const double rho = radius / 2.0;

  // Scaled coefficients c_k rho^k from N equispaced samples.
  auto scaled = [&](int N) {
    std::vector<Complex> samples(N);
    for (int j = 0; j < N; ++j) samples[j] = f(std::polar(rho, 2.0 * std::numbers::pi * j / N));
    std::vector<Complex> c(n);
    for (unsigned k = 1; k <= n; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < N; ++j) acc += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * double(j) * k / N);
      c[k - 1] = acc / double(N);
    }
    return c;
  };

  const int N = static_cast<int>(std::max(4u * n, 64u));
  const auto a = scaled(N);
  const auto b = scaled(2 * N);
  double scale = 0.0, diff = 0.0;
  for (unsigned k = 0; k < n; ++k) {
    scale = std::max(scale, std::abs(b[k]));
    diff = std::max(diff, std::abs(a[k] - b[k]));
  }
  const double err = scale > 0.0 ? diff / scale : diff;
  if (!(err <= tol)) fail(ErrorKind::NonAnalytic, "Taylor coefficients unstable under point doubling", err);

  SeriesResult out;
  out.points = 2 * N;
  out.error = err;
  double rk = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    rk *= rho;
    out.coefficients.push_back(b[k - 1] / rk);
  }
  return out;
}

}  // namespace fg
