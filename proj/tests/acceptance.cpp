// Acceptance run: one line per criterion, "[PASS]" or "[FAIL]", followed by
// the measured evidence. Exit status is 1 when any criterion fails.

#include "freegamma/convolution.hpp"
#include "freegamma/cumulants.hpp"
#include "freegamma/equilibrium.hpp"
#include "freegamma/finite_free.hpp"
#include "freegamma/gibbs.hpp"
#include "freegamma/measures.hpp"
#include "freegamma/rmt.hpp"
#include "freegamma/suites.hpp"
#include "freegamma/transforms.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <iostream>
#include <sstream>

using namespace fg;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED: " << what << ";";
    }
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(seconds < limit_seconds, "runtime " + std::to_string(seconds) + " s over " + std::to_string(limit_seconds) + " s");
  if (!v.pass) ++failures;
  std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << " (" << std::fixed << std::setprecision(2)
            << seconds << " s)" << std::defaultfloat << std::setprecision(6) << v.detail.str() << std::endl;
}

std::string num(double x) { return shortest(x); }

// Boltzmann weight exp(-V) written out from the potential, in log form.
double log_weight(const GFGParams& p, double x) {
  if (p.lambda == 1.0) return -(2.0 + p.t / p.theta) * std::log(x) - p.t * p.t / (p.theta * x);
  const double q = p.q();
  return (q - 1.0) * std::log(x) - (1.0 + p.t * p.lambda / (p.theta * (p.lambda - 1.0))) * std::log(x + p.shift());
}

double z_oracle(const GFGParams& p) {
  auto w = [&](double x) { return x > 0.0 && std::isfinite(x) ? std::exp(log_weight(p, x)) : 0.0; };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double split = p.lambda == 1.0 ? p.t * p.t / p.theta : p.shift();
  return ts.integrate(w, 0.0, split) + es.integrate([&](double u) { return w(split + u); }, 0.0,
                                                     std::numeric_limits<double>::infinity());
}

std::vector<GFGParams> confining_sets() {
  std::vector<GFGParams> out;
  for (double t : {0.5, 1.0, 2.0})
    for (double theta : {0.5, 1.0, 2.0})
      for (double frac : {0.0, 0.5, 0.9}) out.push_back(GFGParams::make(t, theta, 1.0 + frac * t / theta));
  return out;
}

}  // namespace

int main() {
  criterion("AC1", "moments at (1, 1, 1) are 1, 2, 6, 22", 1.0, [](Verdict& v) {
    const auto m = moments(Rational(1), Rational(1), Rational(1), 4);
    const std::array<int, 4> expected{1, 2, 6, 22};
    for (int i = 0; i < 4; ++i) v.require(m[i] == expected[i], "m" + std::to_string(i + 1) + " = " + to_string(m[i]));
    v.detail << " m = " << to_string(m[0]) << ", " << to_string(m[1]) << ", " << to_string(m[2]) << ", " << to_string(m[3]);
  });

  criterion("AC2", "free cumulants match Taylor coefficients of R, 36 triples, n <= 8", 10.0, [](Verdict& v) {
    double worst = 0.0;
    int kappa2 = 0;
    for (auto t : {Rational(1, 2), Rational(1), Rational(2)})
      for (auto theta : {Rational(1, 2), Rational(1), Rational(2)})
        for (auto lambda : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
          const auto kappa = free_cumulants(t, theta, lambda, 8);
          const auto germ = r_germ(rfam::Gfg{GFGParams::make(to_double(t), to_double(theta), to_double(lambda))});
          const auto series = series_oracle(germ.f, 8, germ.radius);
          for (unsigned n = 0; n < 8; ++n) {
            const double k = to_double(kappa[n]);
            worst = std::max(worst, std::abs(series.coefficients[n] - k) / std::abs(k));
          }
          if (kappa[1] == t * theta * lambda) ++kappa2;
        }
    v.require(worst <= 1e-8, "relative gap " + num(worst));
    v.require(kappa2 == 36, "kappa_2 = t theta lambda on " + std::to_string(kappa2) + " of 36");
    const auto m2 = moments(Rational(1), Rational(1), Rational(2), 2)[1];
    v.require(m2 != Rational(2), "m2 at (1, 1, 2) coincides with t^2 + theta t");
    v.detail << " worst relative gap " << num(worst) << ", kappa_2 = t theta lambda on 36/36, m2(1,1,2) = " << to_string(m2)
             << " (t^2 + theta t would give 2)";
  });

  criterion("AC3", "normalization and Stieltjes inversion, 10 triples x 50 points", 30.0, [](Verdict& v) {
    const std::vector<GFGParams> triples{GFGParams::make(1, 1, 1),   GFGParams::make(1, 1, 2),     GFGParams::make(1, 1, 3),
                                         GFGParams::make(2, 0.5, 3), GFGParams::make(0.5, 2, 1.2), GFGParams::make(3, 1, 2.5),
                                         GFGParams::make(1, 2, 1.5), GFGParams::make(2, 1, 1),     GFGParams::make(0.7, 1.3, 1.4),
                                         GFGParams::make(1, 0.5, 1.5)};
    boost::math::quadrature::tanh_sinh<double> ts;
    double mass_gap = 0.0, inv_gap = 0.0;
    for (const auto& p : triples) {
      const auto s = support(p);
      const double mass = atom_mass(p) + ts.integrate([&](double x) { return gfg_density(p, x); }, s.lo, s.hi);
      mass_gap = std::max(mass_gap, std::abs(mass - 1.0));
      auto G = [&](Complex z) { return cauchy_transform(p, z); };
      for (int i = 1; i <= 50; ++i) {
        const double x = s.lo + s.width() * (i - 0.5) / 50.0;
        const double f = gfg_density(p, x);
        inv_gap = std::max(inv_gap, std::abs(stieltjes_invert(G, x).value - f) / std::max(1.0, f));
      }
    }
    v.require(mass_gap <= 1e-8, "mass gap " + num(mass_gap));
    v.require(inv_gap <= 1e-4, "inversion gap " + num(inv_gap));
    v.detail << " mass gap " << num(mass_gap) << ", inversion gap " << num(inv_gap);
  });

  criterion("AC4", "11 catalog identities x 10 parameter sets on 50-point grids", 10.0, [](Verdict& v) {
    int checks = 0;
    double worst = 0.0;
    for (IdentityId id : kIdentityCatalog) {
      const auto sets = default_parameter_sets(id);
      v.require(sets.size() == 10, std::string(identity_name(id)) + " has " + std::to_string(sets.size()) + " sets");
      for (const auto& ip : sets) {
        const auto rep = verify_identity(id, ip, 1e-10);
        ++checks;
        worst = std::max(worst, rep.max_abs_deviation);
        v.require(rep.grid.points.size() == 50, "grid size");
        v.require(rep.pass, std::string(identity_name(id)) + " at " + ip.describe(id) + " deviates " + num(rep.max_abs_deviation));
      }
    }
    v.detail << " " << checks << " checks, worst deviation " << num(worst);
  });

  criterion("AC5", "random matrix checks at N = 1000, 3 seeds", 300.0, [](Verdict& v) {
    for (auto id : {IdentityId::AddSemigroup, IdentityId::MultFormB, IdentityId::MeixnerShift, IdentityId::RatioLaw,
                    IdentityId::InvSumLaw}) {
      const auto r = verify_rmt(id, 1000, {1, 2, 3}, 0.07);
      double worst = 0.0;
      for (const auto& c : r.comparisons) worst = std::max(worst, c.ks);
      v.require(r.pass, std::string(identity_name(id)) + " KS " + num(worst));
      v.detail << " " << identity_name(id) << " max KS " << num(worst) << ";";
    }
    const auto a = verify_rmt(IdentityId::MultFormA, 1000, {1, 2, 3}, 0.07);
    double gap = 0.0;
    for (double f : a.atom_fractions) gap = std::max(gap, std::abs(f - a.atom_target));
    v.require(!a.atom_fractions.empty() && gap <= 0.03, "atom gap " + num(gap));
    v.detail << " atom of mu(1,1,3): target " << num(a.atom_target) << ", worst gap " << num(gap);
  });

  criterion("AC6", "partition function, Pearson residual and Monte Carlo identities", 120.0, [](Verdict& v) {
    double z_gap = 0.0, pearson = 0.0;
    for (const auto& p : {GFGParams::make(1, 1, 1), GFGParams::make(1, 1, 2), GFGParams::make(2, 1, 1.5),
                          GFGParams::make(1, 0.5, 3), GFGParams::make(0.5, 2, 1.2), GFGParams::make(3, 2, 1)}) {
      const double z = partition_function(p);
      z_gap = std::max(z_gap, std::abs(z - z_oracle(p)) / z);
      pearson = std::max(pearson, gibbs_check(p, 100).pearson_max);
    }
    const double half = partition_function(GFGParams::make(1, 1, 2));
    v.require(z_gap <= 1e-6, "Z gap " + num(z_gap));
    v.require(std::abs(half - 0.5) <= 1e-12, "Z(1,1,2) = " + num(half));
    v.require(pearson <= 1e-10, "Pearson residual " + num(pearson));
    v.detail << " Z gap " << num(z_gap) << ", Z(1,1,2) = " << num(half) << ", Pearson " << num(pearson) << ";";
    const RngStream root{0xC0FFEE, 0};
    std::uint64_t k = 0;
    for (const auto& p : {GFGParams::make(1, 1, 2), GFGParams::make(2, 1, 1.5)})
      for (auto id : {ClassicalIdentityId::RhoMultB, ClassicalIdentityId::RhoMe}) {
        const auto r = verify_classical_identity(id, p, 100000, root.substream(k++));
        v.require(r.ks < 0.02, std::string(classical_identity_name(id)) + " KS " + num(r.ks));
        v.detail << " " << classical_identity_name(id) << "(" << r.params.describe() << ") KS " << num(r.ks) << ";";
      }
  });

  criterion("AC7", "equilibrium measure and maximality probes", 180.0, [](Verdict& v) {
    double el = 0.0, ends = 0.0, sigma = 0.0;
    for (const auto& p : confining_sets()) {
      const auto c = equilibrium_check(p, false);
      el = std::max(el, c.el_residual_max);
      ends = std::max({ends, std::abs(c.endpoints.eq0), std::abs(c.endpoints.eq2 - 2.0)});
      sigma = std::max(sigma, c.potential_sigma);
    }
    v.require(el <= 1e-10, "EL residual " + num(el));
    v.require(ends <= 1e-8, "endpoint gap " + num(ends));
    v.require(sigma < 1e-4, "effective potential spread " + num(sigma));
    v.detail << " EL " << num(el) << ", endpoints " << num(ends) << ", spread " << num(sigma) << ";";
    for (const auto& p : {GFGParams::make(1, 1, 1), GFGParams::make(1, 1, 1.5)}) {
      const auto r = maximality_probe(p);
      double gap = INFINITY;
      for (const auto& probe : r.probes) gap = std::min(gap, probe.gap);
      v.require(r.probes.size() == 20 && r.pass, "maximality at " + p.describe() + " smallest gap " + num(gap));
      v.detail << " " << r.probes.size() << " probes at (" << p.describe() << ") smallest gap " << num(gap) << ";";
    }
  });

  criterion("AC8", "finite free convergence and S ratio at d = 200", 60.0, [](Verdict& v) {
    for (const auto& p : {GFGParams::make(1, 1, 2), GFGParams::make(1, 1, 1)}) {
      const auto s = convergence_study(p, {16, 32, 64, 128});
      v.require(s.w1_decreasing, "W1 not decreasing at " + p.describe());
      v.require(s.rows.back().w1 < 0.1, "W1 at d = 128 is " + num(s.rows.back().w1));
      const double target = s_transform(sfam::Gfg{p}, -0.5);
      const double ratio = finite_s_ratio(build_p_d(p, 200), 100);
      v.require(std::abs(ratio - target) <= 2e-2,
                "S ratio at (" + p.describe() + ") is " + num(ratio) + " against " + num(target));
      v.detail << " (" << p.describe() << ") W1";
      for (const auto& row : s.rows) v.detail << " " << num(row.w1);
      v.detail << ", ratio " << num(ratio) << " vs " << num(target) << ";";
    }
  });

  criterion("AC9", "free beta non-FID witness", 1.0, [](Verdict& v) {
    for (double p : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const auto w = free_beta_fid_witness(p);
      const double k = (3 * p + 2) * (3 * p + 2);
      double res = 0.0;
      for (auto z : w.root_pair) {
        const double scale = k * std::norm(z) + 2 * std::pow(p, 5) * std::abs(z) + std::pow(p, 8);
        res = std::max(res, std::abs(k * z * z - 2 * std::pow(p, 5) * z + std::pow(p, 8)) / scale);
        v.require(std::abs(z.imag()) > 0.0, "real root at p = " + num(p));
      }
      v.require(res <= 1e-14, "residual " + num(res) + " at p = " + num(p));
      v.require(!w.is_fid, "flagged FID at p = " + num(p));
      v.detail << " p=" << num(p) << " Im " << num(std::abs(w.root_pair[0].imag())) << " residual " << num(res) << ";";
    }
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion(s) failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
