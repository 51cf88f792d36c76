#include "freegamma/numeric.hpp"

#include "freegamma/error.hpp"

#include <charconv>
#include <cctype>

namespace fg {

namespace {

Rational parse_decimal(std::string_view s) {
  if (s.empty()) fail(ErrorKind::InvalidParameters, "empty number");
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    ++i;
  }
  Integer mantissa = 0;
  long exponent = 0;
  bool digits = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) --exponent;
      digits = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!digits) fail(ErrorKind::InvalidParameters, "malformed number '" + std::string(s) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail(ErrorKind::InvalidParameters, "malformed number '" + std::string(s) + "'");
    long e = 0;
    const char* first = s.data() + i + 1;
    const char* last = s.data() + s.size();
    if (first < last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, e);
    if (ec != std::errc() || ptr != last) fail(ErrorKind::InvalidParameters, "malformed exponent in '" + std::string(s) + "'");
    exponent += e;
  }
  if (exponent > 4000 || exponent < -4000) fail(ErrorKind::InvalidParameters, "exponent out of range in '" + std::string(s) + "'");
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::InvalidParameters, "zero denominator in '" + std::string(text) + "'");
  return Rational(num / den);
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidParameters, "non-finite value has no rational form");
  int e = 0;
  double m = std::frexp(x, &e);
  // m * 2^53 is an exact integer.
  Integer mant(static_cast<long long>(std::ldexp(m, 53)));
  e -= 53;
  if (e >= 0) return Rational(mant * boost::multiprecision::pow(Integer(2), static_cast<unsigned>(e)));
  return Rational(mant, boost::multiprecision::pow(Integer(2), static_cast<unsigned>(-e)));
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r = 1;
  k = std::min(k, n - k);
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace fg
