#include "freegamma/empirical.hpp"

#include "freegamma/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fg {

EmpiricalDistribution EmpiricalDistribution::make(std::vector<double> samples, std::uint64_t seed,
                                                  std::string construction, int matrix_dim) {
  for (double x : samples)
    if (!std::isfinite(x)) fail(ErrorKind::InvalidParameters, "empirical distribution with a non-finite sample");
  std::sort(samples.begin(), samples.end());
  return {std::move(samples), seed, std::move(construction), matrix_dim};
}

double EmpiricalDistribution::fraction_below(double threshold) const {
  const auto it = std::upper_bound(samples.begin(), samples.end(), threshold);
  return samples.empty() ? 0.0 : static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

EmpiricalDistribution esd_map(const EmpiricalDistribution& e, const EsdMap& map) {
  std::vector<double> out(e.samples.size());
  std::string tag;
  if (std::holds_alternative<esd::Reciprocal>(map)) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (e.samples[i] == 0.0) fail(ErrorKind::Domain, "reciprocal of a zero sample");
      out[i] = 1.0 / e.samples[i];
    }
    tag = "reciprocal";
  } else {
    const auto& a = std::get<esd::Affine>(map);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c * e.samples[i] + a.shift;
    tag = "affine(" + shortest(a.c) + "," + shortest(a.shift) + ")";
  }
  return EmpiricalDistribution::make(std::move(out), e.seed, tag + " of " + e.construction, e.matrix_dim);
}

Comparison compare(const EmpiricalDistribution& e, const SpectralMeasure& m) {
  const CdfTable table(m, 1024, ExecutionPolicy::serial);
  return compare(e, m, table);
}

Comparison compare(const EmpiricalDistribution& e, const SpectralMeasure& m, const CdfTable& table) {
  Comparison out;
  const auto& xs = e.samples;
  const std::size_t n = xs.size();
  if (n == 0) fail(ErrorKind::InvalidParameters, "empty empirical distribution");
  const double dn = static_cast<double>(n);

  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i]) ++j;
    const double below = static_cast<double>(i) / dn;
    const double upto = static_cast<double>(j) / dn;
    out.ks = std::max({out.ks, std::abs(table(xs[i]) - upto), std::abs(table.left_limit(xs[i]) - below)});
    i = j;
  }

  // W1 over the breakpoints of both distribution functions.
  std::vector<double> knots(xs.begin(), xs.end());
  knots.push_back(table.support().lo);
  knots.push_back(table.support().hi);
  if (table.atom() > 0.0) knots.push_back(0.0);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<double> pieces;
  pieces.reserve(knots.size());
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    const double fe = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), a) - xs.begin()) / dn;
    auto r = integrate_gk([&](double x) { return std::abs(fe - table(x)); }, a, b, 1e-10, 6);
    pieces.push_back(r.value);
  }
  out.w1 = pairwise_sum(pieces);

  for (int k = 1; k <= 4; ++k) {
    std::vector<double> powers(n);
    for (std::size_t i = 0; i < n; ++i) powers[i] = std::pow(xs[i], k);
    out.moment_gaps[k - 1] = std::abs(pairwise_sum(powers) / dn - moment_by_quadrature(m, k));
  }
  return out;
}

}  // namespace fg
