#pragma once

// Fluorescence spectra in reduced frequency x = (nu - omega)/||alpha||^2.
//
// The inelastic spectrum is a bilinear form of the resolvent (G~ + 2ix)^{-1},
// where G~ is similar to G' + gammatilde via diag(eta, 1, -eta^2). Spectra are
// normalized so that their x-integrals give the integral cross sections.

#include <functional>
#include <stdexcept>
#include <vector>

#include "qsatom/linalg.hpp"
#include "qsatom/model.hpp"

namespace qsatom {

class SingularResolvent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// G~ together with the scalars its closed-form adjugate is written in.
struct SpectralDrift {
  Mat3c matrix;
  double kappa2 = 1.0;
  double shift = 0.0;  // z + (eta^2/2) sin 2s, i.e. -Im(b')
  double eta2 = 0.0;
  double s = 0.0;
  double gammatilde = 0.0;
};

SpectralDrift build_spectral_drift(const ReducedScalars& rs, double eta, double s,
                                   double gammatilde);

struct SpectralCoefficients {
  Vec3c cprime;
  Vec3c cdoubleprime;
  Vec3c dprime;
  Vec3c ddoubleprime;
  cplx mprime;
};

SpectralCoefficients spectral_coefficients(const ScatteringScalars& sc, const ReducedScalars& rs,
                                           double eta);

/// det(G~ + 2ix) in closed form.
cplx resolvent_determinant(const SpectralDrift& g, double x);

/// (G~ + 2ix)^{-1} from the closed-form adjugate. Only rows 0 and 2 are filled;
/// row 1 is never needed by the spectrum and is left zero.
/// Throws SingularResolvent if the determinant underflows relative to the entries.
Mat3c resolvent(const SpectralDrift& g, double x);

/// Inelastic spectrum for fixed scalars and drive, evaluated pointwise.
class InelasticSpectrum {
 public:
  InelasticSpectrum(const ScatteringScalars& sc, const DriveConfig& dc);
  /// Uses the supplied reduced scalars instead of recomputing them.
  InelasticSpectrum(const ScatteringScalars& sc, const ReducedScalars& rs, const DriveConfig& dc);

  double operator()(double x) const;

  const SpectralDrift& drift() const { return drift_; }
  const SpectralCoefficients& coefficients() const { return coeffs_; }

 private:
  SpectralDrift drift_;
  SpectralCoefficients coeffs_;
  double prefactor_ = 0.0;
  double norm2_pdg_ = 0.0;
};

double sigma_inel_x(const ScatteringScalars& sc, const DriveConfig& dc, double x);

/// Elastic line: a Lorentzian of area `weight` (= sigma_el) centred at x = 0.
/// At gammatilde = 0 it degenerates to weight * delta(x) and is reported as such.
struct ElasticLine {
  double weight = 0.0;
  double center = 0.0;
};

ElasticLine elastic_line(const ScatteringScalars& sc, const DriveConfig& dc);

/// weight * (gammatilde / 2pi) / (x^2 + gammatilde^2 / 4).
double elastic_lorentzian(double weight, double gammatilde, double x);

/// Elastic Lorentzian plus inelastic spectrum. Throws std::invalid_argument
/// if gammatilde <= 0.
double sigma_tot_x(const ScatteringScalars& sc, const DriveConfig& dc, double x);

/// Closed-form inelastic spectrum without direct scattering.
double mollow_inel_x(double ztilde, double eta, double gammatilde, double x);
/// Mollow elastic Lorentzian plus mollow_inel_x(). Requires gammatilde > 0.
double mollow_tot_x(double ztilde, double eta, double gammatilde, double x);

/// Leading small-eta form of the inelastic spectrum.
double low_intensity_x(const ScatteringScalars& sc, double ztilde, double gammatilde, double eta,
                       double x);

/// Angle-resolved amplitudes for a detector at polar angle theta.
struct AngularSpectralData {
  cplx a_theta;
  Vec3c c_theta;
  Vec3c d_theta;
  cplx m_theta;
};

AngularSpectralData angular_data(const PhaseShiftTable& table, const DriveConfig& dc, double theta);

struct SpectralDensity {
  double elastic = 0.0;
  double inelastic = 0.0;
};

/// Angle-resolved spectral densities per unit solid angle and unit x.
/// Integrated over the sphere the inelastic part equals sigma_inel_x().
/// Throws std::invalid_argument if gammatilde <= 0.
SpectralDensity spectral_diff(const PhaseShiftTable& table, const DriveConfig& dc, double theta,
                              double x);

struct Peak {
  double x = 0.0;
  double value = 0.0;
};

/// Local maxima of f on [lo, hi]: coarse scan on n_grid points, then
/// golden-section refinement of each bracket to `xtol`.
std::vector<Peak> find_local_maxima(const std::function<double(double)>& f, double lo, double hi,
                                    int n_grid, double xtol = 1e-6);

}  // namespace qsatom
