#include "qsatom/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace qsatom {

bool BlochVector::is_state(double tol) const {
  return u >= -tol && u <= 1.0 + tol && u + tol >= u * u + std::norm(v);
}

DriftMatrix build_drift(const ReducedScalars& rs, double eta, double s) {
  const cplx coupling = 2.0 * eta * std::cos(s) * std::polar(1.0, s);
  Mat3c m;
  m << 2.0, -eta, -eta,
       coupling, rs.bprime, 0.0,
       std::conj(coupling), 0.0, std::conj(rs.bprime);
  return {m};
}

EquilibriumState equilibrium(const ReducedScalars& rs, double eta) {
  const double d = rs.denominator();
  return {eta * eta * rs.kappa2 / d, eta * cplx(rs.kappa2, rs.y) / d};
}

Vec3c stationary_vector(const DriftMatrix& g, double eta) {
  const Vec3c rhs(0.0, eta, eta);
  return g.m.partialPivLu().solve(rhs);
}

BlochVector evolve(const DriftMatrix& g, const BlochVector& x0, double eta, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("evolve: tau must be >= 0");
  if (!x0.is_state(1e-9)) throw std::invalid_argument("evolve: initial vector is not a state");
  if (tau == 0.0) return x0;

  const Vec3c ueq = stationary_vector(g, eta);
  const Mat3c prop = matrix_exp(-0.5 * tau * g.m).value;
  return BlochVector::from_vector(ueq + prop * (x0.as_vector() - ueq));
}

Vec3c propagate_deviation(const DriftMatrix& g, double gammatilde, const Vec3c& d0, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("propagate_deviation: tau must be >= 0");
  if (tau == 0.0) return d0;
  const Mat3c prop = matrix_exp(-0.5 * tau * g.m).value;
  return std::exp(-0.5 * gammatilde * tau) * (prop * d0);
}

}  // namespace qsatom
