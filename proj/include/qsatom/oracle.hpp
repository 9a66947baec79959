#pragma once

// Independent numerical routes used to check the closed forms: direct ODE
// integration, time-domain spectra, quadrature sum rules, brute-force linear
// algebra, and the photon balance of a beam with finite angular width.
//
// Nothing here is called from the production computation path.

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qsatom/bloch.hpp"
#include "qsatom/linalg.hpp"
#include "qsatom/model.hpp"
#include "qsatom/spectrum.hpp"

namespace qsatom {

/// Fixed-step RK4 on the Bloch equation with step <= max_step.
BlochVector ode_evolve(const DriftMatrix& g, double eta, const BlochVector& x0, double tau,
                       double max_step = 1e-3);

class OracleNonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inelastic spectrum as the Laplace transform of the regression-theorem
/// correlation, integrated in time with RK4 on G' + gammatilde + 2ix.
/// Throws OracleNonConvergence if the correlation has not decayed to 1e-12
/// of its initial size within max_tau.
double spectrum_time_domain(const ScatteringScalars& sc, const DriveConfig& dc, double x,
                            double max_tau = 1e4);

enum class SumRuleStatus { pass, sum_rule_violation, quadrature_failure };

const char* to_string(SumRuleStatus s);

struct SumRuleReport {
  double inel_integral = 0.0;
  double inel_error = 0.0;
  double inel_expected = 0.0;
  double tot_integral = 0.0;
  double tot_error = 0.0;
  double tot_expected = 0.0;
  double inel_residual = 0.0;  // relative
  double tot_residual = 0.0;   // relative
  bool quadrature_converged = true;
  SumRuleStatus status = SumRuleStatus::pass;
};

/// Integrates the inelastic and total spectra over x and compares with
/// sigma_inel and sigma_tot at relative tolerance `tol`. Requires gammatilde > 0.
SumRuleReport quad_sum_rules(const ScatteringScalars& sc, const DriveConfig& dc, double tol = 1e-6);
/// Same, integrating a caller-supplied inelastic spectrum.
SumRuleReport quad_sum_rules(const InelasticSpectrum& inel, const ScatteringScalars& sc,
                             const DriveConfig& dc, double tol = 1e-6);

/// Relative difference |a - b| / max(|b|, floor).
double relative_error(double a, double b, double floor = 1e-300);

// Brute-force linear algebra.

/// Gaussian elimination with partial pivoting.
Mat3c generic_inverse(const Mat3c& a);
/// Rule of Sarrus.
cplx det3(const Mat3c& a);
/// Full (G~ + 2ix)^{-1} with the middle row filled from cofactors.
Mat3c resolvent_full(const SpectralDrift& g, double x);

// Finite beam width.

struct FiniteBeamModel {
  int L = 0;
  double dtheta = 0.0;
  std::vector<double> overlaps;  // <Y_l0 | normalized beam profile>, l = 0..L
};

/// Overlaps of the flat cone profile of half-angle dtheta with Y_l0, by
/// 64-point Gauss-Legendre over [cos dtheta, 1].
FiniteBeamModel make_finite_beam(int L, double dtheta);

/// Collimated-limit overlap (1/2) sqrt(2l + 1) (before the 1/dtheta scaling).
double collimated_overlap(int l);

class NonPositiveEquilibrium : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BalanceReport {
  double influx = 0.0;
  double outflux = 0.0;
  double residual = 0.0;
  Eigen::Matrix2cd rho;  // basis (excited, ground)
};

/// Stationary state of the pre-limit master equation for a beam of finite
/// width. Throws NonPositiveEquilibrium if it fails to be a density matrix.
Eigen::Matrix2cd finite_beam_equilibrium(const FiniteBeamModel& fb, const PhaseShiftTable& t,
                                         const DriveConfig& dc);

/// Outgoing photon flux at equilibrium against the incoming flux ||lambda||^2.
BalanceReport finite_beam_balance(const FiniteBeamModel& fb, const PhaseShiftTable& t,
                                  const DriveConfig& dc);

}  // namespace qsatom
