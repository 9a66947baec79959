#pragma once

// Differential and integral cross sections, all as omega^2 sigma / (6 pi c^2).

#include "qsatom/model.hpp"

namespace qsatom {

struct CrossSectionTriple {
  double total = 0.0;
  double elastic = 0.0;
  double inelastic = 0.0;
};

/// Angular differential cross section; independent of phi.
double sigma_diff(const PhaseShiftTable& table, const DriveConfig& dc, double theta);

/// Fano-profile coefficients entering the total cross section.
double fano_a(const ScatteringScalars& sc, const ReducedScalars& rs, double eta2);
double fano_b(const ScatteringScalars& sc, double eta2);
/// E(y) = (y sin s + kappa2 cos s)^2 + ||P Delta g||^2 (y^2 + kappa2^2).
double inelastic_e(const ScatteringScalars& sc, const ReducedScalars& rs);

/// Total cross section in the Fano form (A, B coefficients).
double sigma_tot(const ScatteringScalars& sc, const DriveConfig& dc);
/// Total cross section from the trace form before simplification. Agrees with
/// sigma_tot() algebraically; kept as a second route.
double sigma_tot_trace_form(const ScatteringScalars& sc, const DriveConfig& dc);

double sigma_el(const ScatteringScalars& sc, const DriveConfig& dc);
double sigma_inel(const ScatteringScalars& sc, const DriveConfig& dc);

CrossSectionTriple cross_sections(const ScatteringScalars& sc, const DriveConfig& dc);

/// Closed forms without direct scattering.
CrossSectionTriple mollow_xsections(double ztilde, double eta);

/// eta -> 0 limit of the total cross section.
double low_intensity_tot(const ScatteringScalars& sc, double ztilde);
double low_intensity_tot(const PhaseShiftTable& table, double ztilde);

}  // namespace qsatom
