#pragma once

// Model inputs for a two-level atom with absorption/emission plus direct
// (gauge-term) scattering, and the derived scalar and angular quantities.
//
// Units: every rate and frequency is measured in units of the natural line
// width ||alpha||^2; cross sections are the dimensionless omega^2 sigma / (6 pi c^2).

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace qsatom {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Truncated partial-wave phase shifts delta_l^+ (excited state) and
/// delta_l^- (ground state) of the direct-scattering matrices S^+ and S^-.
/// Shifts beyond lmax are zero.
class PhaseShiftTable {
 public:
  /// Throws std::invalid_argument if the two lists differ in length, are
  /// empty, or contain non-finite values.
  PhaseShiftTable(std::vector<double> delta_plus, std::vector<double> delta_minus);

  /// All-zero table (no direct scattering) with the given truncation.
  static PhaseShiftTable none(int lmax = 0);

  int lmax() const { return static_cast<int>(plus_.size()) - 1; }
  double delta_plus(int l) const;
  double delta_minus(int l) const;
  std::span<const double> plus() const { return plus_; }
  std::span<const double> minus() const { return minus_; }

 private:
  std::vector<double> plus_;
  std::vector<double> minus_;
};

/// The finite set of reals the integral quantities depend on.
struct ScatteringScalars {
  double delta0_plus = 0.0;
  double delta0_minus = 0.0;
  double s = 0.0;               // delta0_plus - delta0_minus
  double norm2_pg_plus = 0.0;   // ||P_perp g+||^2
  double norm2_pg_minus = 0.0;  // ||P_perp g-||^2
  double norm2_pdg = 0.0;       // ||P_perp Delta g||^2
  double eps_r = 0.0;           // lamp-shift coefficient eps / ||alpha||^2
  double cross_pg = 0.0;        // Re <P_perp g+, P_perp g->

  /// ||g+||^2 and ||g-||^2 including the s-wave term.
  double norm2_g_plus() const;
  double norm2_g_minus() const;
  /// ||Delta g||^2 = sin^2 s + ||P_perp Delta g||^2.
  double norm2_dg() const;
};

/// Scalars supplied directly (scalar mode). cross_pg is derived from
/// the polarization identity. Throws std::invalid_argument on negative or
/// non-finite norms or when the triangle bound
/// | ||P g+|| - ||P g-|| | <= ||P Delta g|| <= ||P g+|| + ||P g-||
/// is violated by more than 1e-9.
ScatteringScalars make_scattering_scalars(double delta0_plus, double delta0_minus,
                                          double norm2_pg_plus, double norm2_pg_minus,
                                          double norm2_pdg, double eps_r);

/// All scalars zero: the usual model without direct scattering.
ScatteringScalars no_direct_scattering();

ScatteringScalars scalars_from_phase_shifts(const PhaseShiftTable& table);

/// Tolerance used for the triangle-bound check on supplied scalars.
inline constexpr double triangle_tolerance = 1e-9;

/// True when the triangle bound holds within `tol`.
bool satisfies_triangle_bound(const ScatteringScalars& sc, double tol = triangle_tolerance);

/// Laser drive and detection: amplitude eta, reduced detuning
/// ztilde = (omega - omega0)/||alpha||^2, reduced instrumental width gammatilde.
struct DriveConfig {
  double eta = 0.0;
  double ztilde = 0.0;
  double gammatilde = 0.0;

  static DriveConfig from_eta2(double eta2, double ztilde, double gammatilde = 0.0);
  double eta2() const { return eta * eta; }
};

/// Throws std::invalid_argument unless eta >= 0, gammatilde >= 0 and all finite.
void validate(const DriveConfig& dc);

struct ReducedScalars {
  double z = 0.0;         // 2 Delta omega / ||alpha||^2, includes the lamp shift
  double y = 0.0;         // z - (eta^2/2) sin 2s
  double kappa2 = 1.0;    // 1 + eta^2 ||Delta g||^2
  double zeta2 = 1.0;
  cplx bprime{1.0, 0.0};  // kappa2 - i (z + (eta^2/2) sin 2s)
  double norm2_dg = 0.0;  // ||Delta g||^2

  /// z^2 + zeta^2, the common resonance denominator.
  double denominator() const { return z * z + zeta2; }
};

ReducedScalars reduced_scalars(const ScatteringScalars& sc, const DriveConfig& dc);

/// (g+(theta), g-(theta)), the collimated-limit scattered amplitudes.
std::pair<cplx, cplx> g_pm(const PhaseShiftTable& table, double theta);

/// Delta g(theta) = g+(theta) - g-(theta).
cplx delta_g(const PhaseShiftTable& table, double theta);

/// Delta g(theta) assembled as s-wave part plus the P_perp remainder
/// (sum over l >= 1 with e^{i(d+ + d-)} sin(d+ - d-)). Equal to delta_g().
cplx delta_g_partial_waves(const PhaseShiftTable& table, double theta);

/// Legendre values P_0(x) .. P_lmax(x) by the upward three-term recurrence.
std::vector<double> legendre_values(int lmax, double x);

}  // namespace qsatom
