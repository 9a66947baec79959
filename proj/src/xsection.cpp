#include "qsatom/xsection.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace qsatom {

namespace {

double sq(double v) { return v * v; }

}  // namespace

double sigma_diff(const PhaseShiftTable& table, const DriveConfig& dc, double theta) {
  const ScatteringScalars sc = scalars_from_phase_shifts(table);
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const auto [gp, gm] = g_pm(table, theta);
  const double d = rs.denominator();
  const double eta2 = dc.eta2();

  const double direct = std::norm(gm);
  const double resonant =
      rs.kappa2 / d * (1.0 / (4.0 * pi) + eta2 * (std::norm(gp) - std::norm(gm)));
  const cplx interference =
      std::polar(1.0, -2.0 * sc.delta0_minus) * gm * cplx(rs.kappa2, -rs.y);
  const double value =
      direct + resonant - 2.0 / (std::sqrt(4.0 * pi) * d) * interference.real();
  return std::max(value, 0.0);
}

double fano_a(const ScatteringScalars& sc, const ReducedScalars& rs, double eta2) {
  const double pdg = sc.norm2_pdg;
  return sq(std::sin(sc.delta0_plus)) + rs.kappa2 * sc.norm2_g_plus() +
         pdg * (1.0 + eta2 * (1.0 + pdg) * sq(std::sin(sc.delta0_minus)));
}

double fano_b(const ScatteringScalars& sc, double eta2) {
  const double p = eta2 * sc.norm2_pdg;
  return (1.0 + eta2 + p) * (1.0 + p);
}

double inelastic_e(const ScatteringScalars& sc, const ReducedScalars& rs) {
  return sq(rs.y * std::sin(sc.s) + rs.kappa2 * std::cos(sc.s)) +
         sc.norm2_pdg * (rs.y * rs.y + rs.kappa2 * rs.kappa2);
}

double sigma_tot_trace_form(const ScatteringScalars& sc, const DriveConfig& dc) {
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const double d = rs.denominator();
  const double dm = sc.delta0_minus;
  return sc.norm2_g_minus() +
         rs.kappa2 / d * (1.0 + dc.eta2() * (sc.norm2_g_plus() - sc.norm2_g_minus())) -
         (rs.y * std::sin(2.0 * dm) + 2.0 * rs.kappa2 * sq(std::sin(dm))) / d;
}

double sigma_tot(const ScatteringScalars& sc, const DriveConfig& dc) {
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const double eta2 = dc.eta2();
  const double d = rs.denominator();
  const double z2 = rs.z * rs.z;
  const double dm = sc.delta0_minus;
  const double value = (sq(rs.z * std::sin(dm) - std::cos(dm)) + eta2 * fano_a(sc, rs, eta2)) / d +
                       sc.norm2_pg_minus * (z2 + fano_b(sc, eta2)) / d;
#ifndef NDEBUG
  {
    // The trace form subtracts O(1) terms; compare on the scale of its pieces.
    const double other = sigma_tot_trace_form(sc, dc);
    const double scale = sc.norm2_g_minus() + rs.kappa2 / d * (1.0 + eta2 * sc.norm2_g_plus()) +
                         (std::abs(rs.y) + 2.0 * rs.kappa2) / d;
    assert(std::abs(value - other) <= 1e-12 * scale + 1e-300);
  }
#endif
  return value;
}

double sigma_el(const ScatteringScalars& sc, const DriveConfig& dc) {
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const double eta2 = dc.eta2();
  const double d = rs.denominator();
  const double zb = rs.z * rs.z + fano_b(sc, eta2);
  const double ek = eta2 * rs.kappa2;

  // ||P[(z^2+B) g- + eta^2 kappa^2 g+]||^2 expanded with Re<P g+, P g->.
  const double perp = zb * zb * sc.norm2_pg_minus + ek * ek * sc.norm2_pg_plus +
                      2.0 * zb * ek * sc.cross_pg;
  const double dm = sc.delta0_minus;
  const cplx swave = std::polar(1.0, -dm) * std::sin(dm) +
                     (ek * std::polar(1.0, sc.s) * std::sin(sc.s) + cplx(-rs.y, rs.kappa2)) / d;
  return std::max(perp, 0.0) / (d * d) + std::norm(swave);
}

double sigma_inel(const ScatteringScalars& sc, const DriveConfig& dc) {
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const double d = rs.denominator();
  return dc.eta2() * (1.0 + rs.kappa2) * inelastic_e(sc, rs) / (d * d);
}

CrossSectionTriple cross_sections(const ScatteringScalars& sc, const DriveConfig& dc) {
  return {sigma_tot(sc, dc), sigma_el(sc, dc), sigma_inel(sc, dc)};
}

CrossSectionTriple mollow_xsections(double ztilde, double eta) {
  const double eta2 = eta * eta;
  const double lor = 4.0 * ztilde * ztilde + 1.0;
  const double den = lor + 2.0 * eta2;
  return {1.0 / den, lor / (den * den), 2.0 * eta2 / (den * den)};
}

double low_intensity_tot(const ScatteringScalars& sc, double ztilde) {
  const double z = 2.0 * ztilde;
  const double dm = sc.delta0_minus;
  return sc.norm2_pg_minus + sq(z * std::sin(dm) - std::cos(dm)) / (z * z + 1.0);
}

double low_intensity_tot(const PhaseShiftTable& table, double ztilde) {
  return low_intensity_tot(scalars_from_phase_shifts(table), ztilde);
}

}  // namespace qsatom
