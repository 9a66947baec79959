#pragma once

// Seeded generators for randomized checks. The same seed always yields the
// same parameter sets.

#include <cmath>
#include <cstdint>
#include <random>

#include "qsatom/model.hpp"

namespace qsatom::gen {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 0x5eed'2024'0a70'0001ULL;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Scalars with delta0 in [-pi/2, pi/2], ||P g+-||^2 in [0, 0.5],
/// ||P Delta g||^2 inside the triangle bound, eps_r in [-0.1, 0.1].
inline ScatteringScalars scalars(Rng& rng) {
  const double pgp = uniform(rng, 0.0, 0.5);
  const double pgm = uniform(rng, 0.0, 0.5);
  const double lo = std::pow(std::sqrt(pgp) - std::sqrt(pgm), 2);
  const double hi = std::pow(std::sqrt(pgp) + std::sqrt(pgm), 2);
  const double d0p = uniform(rng, -pi / 2, pi / 2);
  const double d0m = uniform(rng, -pi / 2, pi / 2);
  return make_scattering_scalars(d0p, d0m, pgp, pgm, uniform(rng, lo, hi),
                                 uniform(rng, -0.1, 0.1));
}

/// eta^2 in [0, eta2_max], ztilde in [-z_max, z_max].
inline DriveConfig drive(Rng& rng, double eta2_max = 50.0, double z_max = 10.0,
                         double gammatilde = 0.0) {
  const double e2 = uniform(rng, 0.0, eta2_max);
  return DriveConfig::from_eta2(e2, uniform(rng, -z_max, z_max), gammatilde);
}

/// Short random phase-shift table with |delta| <= amp.
inline PhaseShiftTable table(Rng& rng, int lmax, double amp = 0.3) {
  std::vector<double> p(lmax + 1), m(lmax + 1);
  for (int l = 0; l <= lmax; ++l) {
    p[l] = uniform(rng, -amp, amp);
    m[l] = uniform(rng, -amp, amp);
  }
  return {p, m};
}

}  // namespace qsatom::gen
