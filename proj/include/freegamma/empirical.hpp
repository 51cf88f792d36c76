#pragma once

#include "freegamma/measures.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fg {

/// Sorted sample with provenance of the random construction that produced it.
struct EmpiricalDistribution {
  std::vector<double> samples;
  std::uint64_t seed = 0;
  std::string construction;
  int matrix_dim = 0;

  /// Sorts the samples; all entries must be finite.
  static EmpiricalDistribution make(std::vector<double> samples, std::uint64_t seed, std::string construction,
                                    int matrix_dim);

  double fraction_below(double threshold) const;
};

namespace esd {
struct Reciprocal {};
/// x -> c x + shift.
struct Affine {
  double c = 1.0;
  double shift = 0.0;
};
}  // namespace esd

using EsdMap = std::variant<esd::Reciprocal, esd::Affine>;

EmpiricalDistribution esd_map(const EmpiricalDistribution& e, const EsdMap& map);

struct Comparison {
  double ks = 0.0;
  double w1 = 0.0;
  std::array<double, 4> moment_gaps{};
};

/// Kolmogorov-Smirnov distance (right-continuous cdf with left limits, so an
/// atom is matched by ties), Wasserstein-1 distance int |F_e - F| dx, and the
/// gaps between the first four sample moments and those of m.
Comparison compare(const EmpiricalDistribution& e, const SpectralMeasure& m);
Comparison compare(const EmpiricalDistribution& e, const SpectralMeasure& m, const CdfTable& table);

}  // namespace fg
