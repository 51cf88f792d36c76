#include "freegamma/finite_free.hpp"

#include "freegamma/error.hpp"
#include "freegamma/measures.hpp"

#include <Eigen/Eigenvalues>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fg {

namespace {

// Working precision of every Real created on this thread.
thread_local mpfr_prec_t g_precision = 128;

class Real {
 public:
  Real() { mpfr_init2(v_, g_precision); mpfr_set_zero(v_, 1); }
  explicit Real(double x) { mpfr_init2(v_, g_precision); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(const Rational& q) {
    mpfr_init2(v_, g_precision);
    mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a) { Real r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real hypot(const Real& a, const Real& b) { Real r; mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

 private:
  mpfr_t v_;
};

struct Cx {
  Real re;
  Real im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Real abs(const Cx& a) { return hypot(a.re, a.im); }

void require_degree(int d) {
  if (d < 1) fail(ErrorKind::InvalidParameters, "polynomial degree must be at least 1");
}

// Poles of 1/(ad)_k for k <= d: ad in {0, 1, ..., d-1}.
void require_off_pole(const Rational& a, int d, const char* name) {
  const Rational ad = a * d;
  for (int i = 0; i < d; ++i)
    if (ad == i) fail(ErrorKind::Pole, std::string(name) + " * d hits the pole " + std::to_string(i));
}

// Parlett-Reinsch balancing by powers of two.
void balance(Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) { f *= 2.0; c *= 4.0; }
      g = r * 2.0;
      while (c > g) { f /= 2.0; c /= 4.0; }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::vector<std::complex<double>> starting_points(const std::vector<double>& coef) {
  const int d = static_cast<int>(coef.size()) - 1;
  std::vector<std::complex<double>> z(d);
  bool ok = true;
  if (d == 1) {
    z[0] = -coef[1];
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -coef[d - i];
    for (int i = 0; i < d && ok; ++i) ok = std::isfinite(comp(i, d - 1));
    if (ok) {
      balance(comp);
      Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
      ok = solver.info() == Eigen::Success;
      for (int i = 0; i < d && ok; ++i) {
        z[i] = solver.eigenvalues()(i);
        ok = std::isfinite(z[i].real()) && std::isfinite(z[i].imag());
      }
    }
  }
  double radius = 0.0;
  for (int k = 1; k <= d; ++k) radius = std::max(radius, std::pow(std::abs(coef[k]), 1.0 / k));
  if (!ok) {
    for (int k = 0; k < d; ++k) z[k] = std::polar(2.0 * radius + 1.0, 2.0 * M_PI * (k + 0.25) / d);
  }
  // Break exact ties so that the Aberth sums stay finite.
  for (int k = 0; k < d; ++k) z[k] += 1e-7 * (1.0 + std::abs(z[k])) * std::polar(1.0, 0.7 + 2.0 * M_PI * k / d);
  return z;
}

}  // namespace

MonicPolynomial MonicPolynomial::from_e_tilde(std::vector<Rational> e) {
  if (e.size() < 2) fail(ErrorKind::InvalidParameters, "polynomial degree must be at least 1");
  if (e[0] != 1) fail(ErrorKind::InvalidParameters, "e_0 must equal 1");
  MonicPolynomial p;
  p.degree = static_cast<int>(e.size()) - 1;
  p.e_tilde = std::move(e);
  return p;
}

MonicPolynomial MonicPolynomial::from_roots(const std::vector<Rational>& roots) {
  const int d = static_cast<int>(roots.size());
  require_degree(d);
  // Elementary symmetric polynomials by the product recurrence.
  std::vector<Rational> e(d + 1, Rational(0));
  e[0] = 1;
  for (int i = 0; i < d; ++i)
    for (int k = i + 1; k >= 1; --k) e[k] += roots[i] * e[k - 1];
  for (int k = 1; k <= d; ++k) e[k] /= Rational(binomial(d, k));
  return from_e_tilde(std::move(e));
}

std::vector<Rational> MonicPolynomial::coefficients() const {
  std::vector<Rational> c(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    c[k] = Rational(binomial(degree, k)) * e_tilde[k];
    if (k % 2 == 1) c[k] = -c[k];
  }
  return c;
}

Rational MonicPolynomial::evaluate(const Rational& x) const {
  Rational acc(0);
  for (const auto& c : coefficients()) acc = acc * x + c;
  return acc;
}

std::string MonicPolynomial::describe() const {
  std::ostringstream os;
  os << "degree " << degree << " polynomial, e~ = (";
  for (int k = 0; k <= std::min(degree, 3); ++k) os << (k ? ", " : "") << to_string(e_tilde[k]);
  if (degree > 3) os << ", ...";
  os << ")";
  return os.str();
}

MonicPolynomial jacobi_poly(const Rational& a, const Rational& b, int d) {
  require_degree(d);
  require_off_pole(a, d, "a");
  std::vector<Rational> e(d + 1);
  const Rational ad = a * d;
  const Rational bd = b * d;
  for (int k = 0; k <= d; ++k) e[k] = falling_factorial(bd, k) / falling_factorial(ad, k);
  return MonicPolynomial::from_e_tilde(std::move(e));
}

MonicPolynomial bessel_poly(const Rational& a, int d) {
  require_degree(d);
  require_off_pole(a, d, "a");
  std::vector<Rational> e(d + 1);
  const Rational ad = a * d;
  Rational dk(1);
  for (int k = 0; k <= d; ++k) {
    e[k] = dk / falling_factorial(ad, k);
    dk *= d;
  }
  return MonicPolynomial::from_e_tilde(std::move(e));
}

MonicPolynomial transform_poly(const MonicPolynomial& p, const PolyOp& op) {
  auto e = p.e_tilde;
  std::visit(
      [&](const auto& o) {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, polyop::Reflect>) {
          for (std::size_t k = 1; k < e.size(); k += 2) e[k] = -e[k];
        } else {
          if (o.c == 0) fail(ErrorKind::InvalidParameters, "dilation factor must be nonzero");
          Rational ck(1);
          for (auto& v : e) {
            v *= ck;
            ck *= o.c;
          }
        }
      },
      op);
  return MonicPolynomial::from_e_tilde(std::move(e));
}

MonicPolynomial build_p_d(const ExactGFGParams& p, int d) {
  require_degree(d);
  const Rational ratio = p.t / p.theta;
  if (p.lambda == 1) {
    const auto b = bessel_poly(-ratio, d);
    return transform_poly(transform_poly(b, polyop::Reflect{}), polyop::Dilate{p.t * p.t / p.theta});
  }
  if (p.lambda > 1 + ratio)
    fail(ErrorKind::Domain, "the Jacobi construction needs 1 < lambda <= 1 + t/theta");
  const Rational A = -ratio;
  const Rational B = p.t / (p.theta * (p.lambda - 1)) + Rational(1, d);
  const auto j = jacobi_poly(A, B, d);
  return transform_poly(transform_poly(j, polyop::Reflect{}), polyop::Dilate{p.t * (p.lambda - 1)});
}

MonicPolynomial build_p_d(const GFGParams& p, int d) { return build_p_d(ExactGFGParams::from(p), d); }

RootSet roots(const MonicPolynomial& p, const RootOptions& opts) {
  const int d = p.degree;
  require_degree(d);
  const auto exact = p.coefficients();
  std::vector<double> coef(d + 1);
  RootSet out;
  for (int k = 0; k <= d; ++k) {
    coef[k] = to_double(exact[k]);
    out.coefficient_scale = std::max(out.coefficient_scale, std::abs(coef[k]));
  }

  const int bits = opts.precision_bits > 0 ? opts.precision_bits : 64 + 4 * d;
  const mpfr_prec_t saved = g_precision;
  g_precision = bits;

  std::vector<Real> c;
  c.reserve(d + 1);
  for (const auto& q : exact) c.emplace_back(q);

  auto eval = [&](const Cx& z) {
    Cx v{Real(1.0), Real()};
    Cx dv{Real(), Real()};
    for (int k = 1; k <= d; ++k) {
      dv = dv * z + v;
      v = v * z;
      v.re = v.re + c[k];
    }
    return std::pair{v, dv};
  };

  std::vector<Cx> z;
  for (const auto& s : starting_points(coef)) z.push_back({Real(s.real()), Real(s.imag())});

  // Corrections below half the working precision are followed by two more
  // sweeps, which the cubic convergence turns into full precision.
  const double eps = std::ldexp(1.0, -bits / 2);
  bool converged = false;
  int extra = 2;
  for (int iterations = 0; iterations < opts.max_iterations && extra > 0; ++iterations) {
    std::vector<Cx> step(d, Cx{Real(), Real()});
    bool small = true;
    for (int i = 0; i < d; ++i) {
      auto [v, dv] = eval(z[i]);
      if (v.re.is_zero() && v.im.is_zero()) continue;
      const Cx newton = v / dv;
      Cx sum{Real(), Real()};
      for (int j = 0; j < d; ++j)
        if (j != i) sum = sum + Cx{Real(1.0), Real()} / (z[i] - z[j]);
      step[i] = newton / (Cx{Real(1.0), Real()} - newton * sum);
      const Real size = abs(step[i]);
      const Real scale = abs(z[i]);
      const double rel = (size / (scale.is_zero() ? Real(1.0) : scale)).to_double();
      if (!(rel <= eps)) small = false;
    }
    for (int i = 0; i < d; ++i) z[i] = z[i] - step[i];
    converged = converged || small;
    if (converged) --extra;
  }

  std::vector<std::pair<double, double>> parts;
  for (int i = 0; i < d; ++i) {
    out.residual_max = std::max(out.residual_max, abs(eval(z[i]).first).to_double());
    parts.emplace_back(z[i].re.to_double(), z[i].im.to_double());
  }
  g_precision = saved;

  std::sort(parts.begin(), parts.end());
  for (const auto& [re, im] : parts) {
    out.roots.push_back(re);
    out.max_imaginary = std::max(out.max_imaginary, std::abs(im));
  }
  const double span = std::max(1.0, out.roots.back() - out.roots.front());
  out.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i < d; ++i) out.min_gap = std::min(out.min_gap, out.roots[i] - out.roots[i - 1]);
  out.distinct = d == 1 || out.min_gap > 1e-10 * span;
  if (out.max_imaginary > 1e-8 * span) out.warnings.push_back("non-real roots present; real parts reported");
  if (!converged) {
    if (out.min_gap < 1e-3 * span)
      out.warnings.push_back("root iteration stalled on a cluster: multiple root suspected");
    else
      fail(ErrorKind::NonConvergence, "Aberth iteration did not converge for " + p.describe());
  } else if (!out.distinct) {
    out.warnings.push_back("multiple root suspected: minimum gap " + shortest(out.min_gap));
  }
  return out;
}

Rational finite_s_ratio_exact(const MonicPolynomial& p, int k) {
  if (k < 1 || k > p.degree) fail(ErrorKind::InvalidParameters, "finite S ratio needs 1 <= k <= d");
  if (p.e_tilde[k] == 0) fail(ErrorKind::ZeroCoefficient, "e_" + std::to_string(k) + " vanishes");
  return p.e_tilde[k - 1] / p.e_tilde[k];
}

double finite_s_ratio(const MonicPolynomial& p, int k) { return to_double(finite_s_ratio_exact(p, k)); }

EmpiricalDistribution root_distribution(const RootSet& r, int d) {
  return EmpiricalDistribution::make(r.roots, 0, "roots of p_" + std::to_string(d), d);
}

ConvergenceStudy convergence_study(const GFGParams& p, const std::vector<int>& dims, ExecutionPolicy policy) {
  if (dims.empty()) fail(ErrorKind::InvalidParameters, "no degrees given");
  if (!std::is_sorted(dims.begin(), dims.end())) fail(ErrorKind::InvalidParameters, "degrees must ascend");
  const auto measure = gfg_measure(p);
  const CdfTable table(measure, 1024, ExecutionPolicy::serial);
  ConvergenceStudy out;
  out.params = p;
  out.rows = map_indices(policy, dims.size(), [&](std::size_t i) {
    const int d = dims[i];
    const auto r = roots(build_p_d(p, d));
    const auto cmp = compare(root_distribution(r, d), measure, table);
    return ConvergenceRow{d, cmp.w1, cmp.ks, r.residual_max};
  });
  out.w1_decreasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    out.w1_decreasing = out.w1_decreasing && out.rows[i].w1 < out.rows[i - 1].w1;
  out.last_smallest = true;
  for (const auto& row : out.rows) out.last_smallest = out.last_smallest && out.rows.back().w1 <= row.w1;
  return out;
}

}  // namespace fg
