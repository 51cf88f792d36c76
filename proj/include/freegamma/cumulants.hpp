#pragma once

#include "freegamma/error.hpp"
#include "freegamma/numeric.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace fg {

/// Largest order accepted by the exact routines.
inline constexpr unsigned kMaxOrder = 400;
/// Largest order for which block profiles are enumerated.
inline constexpr unsigned kMaxProfileOrder = 16;

/// Block profile (r_1, ..., r_n) of a non-crossing partition of {1..n}:
/// r_i blocks of size i.
struct BlockProfile {
  std::vector<unsigned> r;  // r[i-1] = number of blocks of size i

  unsigned blocks() const;
  unsigned elements() const;
  /// Number of non-crossing partitions with this profile,
  /// n! / (r_1! ... r_n! (n - m + 1)!).
  Integer weight() const;
};

/// All block profiles with sum_i i r_i = n.
std::vector<BlockProfile> block_profiles(unsigned n);

/// Narayana number N(n, r) = C(n, r) C(n, r-1) / n.
Integer narayana(unsigned n, unsigned r);

namespace detail {

inline void check_order(unsigned n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "order must be >= 1");
  if (n > kMaxOrder) fail(ErrorKind::Domain, "order " + std::to_string(n) + " exceeds the configured maximum");
}

template <class T>
T power(const T& x, unsigned k) {
  T r(1);
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

template <class T>
bool agree(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  else return a == b;
}

}  // namespace detail

/// n-th moment of pi_{theta,lambda}: theta^n sum_r N(n,r) lambda^r.
template <class T>
T mp_moment(const T& theta, const T& lambda, unsigned n) {
  detail::check_order(n);
  T sum(0);
  for (unsigned r = 1; r <= n; ++r) sum += from_integer<T>(narayana(n, r)) * detail::power(lambda, r);
  return detail::power(theta, n) * sum;
}

/// kappa_1 = t, kappa_{n+1} = t m_n(pi_{theta,lambda}).
template <class T>
T free_cumulant(const T& t, const T& theta, const T& lambda, unsigned n) {
  detail::check_order(n);
  if (n == 1) return t;
  return t * mp_moment(theta, lambda, n - 1);
}

template <class T>
std::vector<T> free_cumulants(const T& t, const T& theta, const T& lambda, unsigned n) {
  std::vector<T> k;
  for (unsigned i = 1; i <= n; ++i) k.push_back(free_cumulant(t, theta, lambda, i));
  return k;
}

/// m_n as a sum over block profiles; kappa[i-1] = kappa_i.
template <class T>
T moment_by_profiles(const std::vector<T>& kappa, unsigned n) {
  detail::check_order(n);
  if (n > kMaxProfileOrder) fail(ErrorKind::Domain, "block-profile enumeration is capped at n = 16");
  if (kappa.size() < n) fail(ErrorKind::InvalidParameters, "not enough cumulants");
  T sum(0);
  for (const auto& prof : block_profiles(n)) {
    T term = from_integer<T>(prof.weight());
    for (unsigned i = 1; i <= n; ++i) term *= detail::power(kappa[i - 1], prof.r[i - 1]);
    sum += term;
  }
  return sum;
}

/// Moments m_1..m_n from M(z) = 1 + sum_s kappa_s z^s M(z)^s.
template <class T>
std::vector<T> moments_by_recursion(const std::vector<T>& kappa, unsigned n) {
  detail::check_order(n);
  if (kappa.size() < n) fail(ErrorKind::InvalidParameters, "not enough cumulants");
  std::vector<T> m(n + 1, T(0));
  m[0] = T(1);
  for (unsigned k = 1; k <= n; ++k) {
    // [z^{k-s}] M^s for s = 1..k, using the moments already known.
    std::vector<T> power(k, T(0));  // coefficients of M^s up to degree k-1
    power[0] = T(1);
    T mk(0);
    for (unsigned s = 1; s <= k; ++s) {
      std::vector<T> next(k, T(0));
      for (unsigned i = 0; i < k; ++i) {
        if (power[i] == T(0)) continue;
        for (unsigned j = 0; i + j < k; ++j) next[i + j] += power[i] * m[j];
      }
      power.swap(next);
      mk += kappa[s - 1] * power[k - s];
    }
    m[k] = mk;
  }
  return {m.begin() + 1, m.end()};
}

/// Moments m_1..m_n of mu_{t,theta,lambda}. Orders up to 16 are evaluated by
/// both routes, which must agree (exactly for rationals).
template <class T>
std::vector<T> moments(const T& t, const T& theta, const T& lambda, unsigned n) {
  const auto kappa = free_cumulants(t, theta, lambda, n);
  auto m = moments_by_recursion(kappa, n);
  for (unsigned k = 1; k <= std::min(n, kMaxProfileOrder); ++k) {
    if (!detail::agree(moment_by_profiles(kappa, k), m[k - 1]))
      fail(ErrorKind::InternalInconsistency, "block-profile and recursive moments disagree at n = " + std::to_string(k));
  }
  return m;
}

template <class T>
T moment(const T& t, const T& theta, const T& lambda, unsigned n) {
  return moments(t, theta, lambda, n).back();
}

/// Free cumulants of the background driving process: t (2 theta)^{n-1} (2n-3)!! / (n-1)!.
template <class T>
T bdlp_cumulant(const T& t, const T& theta, unsigned n) {
  detail::check_order(n);
  if (n == 1) return t;
  Integer dfact = 1;
  for (unsigned k = 2 * n - 3; k >= 1; k -= 2) {
    dfact *= k;
    if (k == 1) break;
  }
  return t * detail::power(T(2) * theta, n - 1) * from_integer<T>(dfact) / from_integer<T>(factorial(n - 1));
}

/// Corr(X_s, X_t) of the free gamma process, from kappa_2 of its increments.
double process_correlation(double s, double t, double theta = 1.0, double lambda = 1.0);

struct SeriesResult {
  std::vector<Complex> coefficients;  // c_1 .. c_n
  double error = 0.0;                 // largest change under point doubling
  int points = 0;
};

/// Taylor coefficients c_1..c_n of f (f(0) = 0) from the discrete Cauchy
/// integral over |z| = radius/2; `radius` is the radius of analyticity.
SeriesResult series_oracle(const std::function<Complex(Complex)>& f, unsigned n, double radius, double tol = 1e-10);

}  // namespace fg
