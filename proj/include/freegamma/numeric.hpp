#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

namespace fg {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Complex = std::complex<double>;

/// Parses "2", "-0.125", "3/2" or "1.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational exact_rational(double x);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

std::string to_string(const Rational& q);

/// Shortest decimal that parses back to the same double.
std::string shortest(double x);

struct Tolerance {
  double atol = 1e-14;
  double rtol = 1e-10;
};

inline bool close(Complex a, Complex b, Tolerance tol = {}) {
  return std::abs(a - b) <= tol.atol + tol.rtol * std::max(std::abs(a), std::abs(b));
}

inline bool close(double a, double b, Tolerance tol = {}) {
  return std::abs(a - b) <= tol.atol + tol.rtol * std::max(std::abs(a), std::abs(b));
}

/// Conversion from an exact integer or rational into the arithmetic type T.
template <class T>
T from_integer(const Integer& z) {
  if constexpr (std::is_same_v<T, double>) return z.convert_to<double>();
  else return T(z);
}

template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) return q.convert_to<double>();
  else return T(q);
}

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

}  // namespace fg
