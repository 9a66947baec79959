#pragma once

// Reduced-state dynamics in Bloch form.
//
// The 2x2 reduced state is [[u, v], [conj(v), 1 - u]]. With reduced time
// tau = ||alpha||^2 t the master equation becomes
//
//   d/dtau (u, v, conj v)^T = -(1/2) G' (u, v, conj v)^T + (0, eta/2, eta/2)^T,
//
// where G' is stored exactly in its printed dimensionless form.

#include <complex>

#include "qsatom/linalg.hpp"
#include "qsatom/model.hpp"

namespace qsatom {

struct BlochVector {
  double u = 0.0;
  cplx v{0.0, 0.0};

  Vec3c as_vector() const { return {cplx(u, 0.0), v, std::conj(v)}; }
  /// Takes u from the real part of component 0 and v from component 1.
  static BlochVector from_vector(const Vec3c& w) { return {w(0).real(), w(1)}; }

  /// 0 <= u <= 1 and u >= u^2 + |v|^2, each within `tol`.
  bool is_state(double tol = 1e-12) const;
};

/// Strong type for the 3x3 drift matrix G'.
struct DriftMatrix {
  Mat3c m;
};

struct EquilibriumState {
  double u_inf = 0.0;
  cplx v_inf{0.0, 0.0};

  BlochVector state() const { return {u_inf, v_inf}; }
};

DriftMatrix build_drift(const ReducedScalars& rs, double eta, double s);

/// Closed-form stationary state.
EquilibriumState equilibrium(const ReducedScalars& rs, double eta);

/// Exact affine solution u(tau) = u_eq + exp(-G' tau / 2)(u0 - u_eq).
/// Throws std::invalid_argument for tau < 0 or when x0 is not a state.
BlochVector evolve(const DriftMatrix& g, const BlochVector& x0, double eta, double tau);

/// d(tau) = exp(-gammatilde tau / 2) exp(-G' tau / 2) d0. Throws for tau < 0.
Vec3c propagate_deviation(const DriftMatrix& g, double gammatilde, const Vec3c& d0, double tau);

/// Stationary point of the affine flow obtained by solving G' u = (0, eta, eta)
/// with a generic LU factorization.
Vec3c stationary_vector(const DriftMatrix& g, double eta);

}  // namespace qsatom
