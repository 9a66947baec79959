#include "qsatom/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "qsatom/bloch.hpp"
#include "qsatom/xsection.hpp"

namespace qsatom {

namespace {

constexpr cplx I{0.0, 1.0};

// Bilinear form a^dagger m b.
cplx bilinear(const Vec3c& a, const Mat3c& m, const Vec3c& b) {
  return a.adjoint() * (m * b);
}

void require_positive_width(double gammatilde, const char* what) {
  if (!(gammatilde > 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": gammatilde must be > 0 (elastic line is a delta at 0)");
  }
}

}  // namespace

SpectralDrift build_spectral_drift(const ReducedScalars& rs, double eta, double s,
                                   double gammatilde) {
  const double eta2 = eta * eta;
  const double cs = std::cos(s);
  SpectralDrift g;
  g.kappa2 = rs.kappa2;
  g.shift = -rs.bprime.imag();
  g.eta2 = eta2;
  g.s = s;
  g.gammatilde = gammatilde;
  g.matrix << 2.0 + gammatilde, -1.0, eta2,
              2.0 * eta2 * cs * std::polar(1.0, s), rs.bprime + gammatilde, 0.0,
              -2.0 * cs * std::polar(1.0, -s), 0.0, std::conj(rs.bprime) + gammatilde;
  return g;
}

SpectralCoefficients spectral_coefficients(const ScatteringScalars& sc, const ReducedScalars& rs,
                                           double eta) {
  const double eta2 = eta * eta;
  const double k2 = rs.kappa2;
  const double y = rs.y;
  const double s = sc.s;
  const double reduced_d = rs.denominator() - eta2 * k2;
  const cplx swave = std::polar(1.0, s) * std::sin(s);  // e^{is} sin s
  const cplx ky(k2, y);                                 // kappa2 + i y
  const cplx kmy(k2, -y);                               // kappa2 - i y

  SpectralCoefficients c;
  c.cprime = Vec3c(I * swave, 0.0, 1.0);
  c.cdoubleprime = Vec3c(1.0, 0.0, 0.0);
  c.mprime = ky + I * reduced_d * swave;
  const double cos_s = std::cos(s);
  const cplx d3 = rs.norm2_dg * (y * y + k2 * k2) + k2 * y * std::sin(2.0 * s) +
                  2.0 * k2 * k2 * cos_s * cos_s + I * k2 * kmy * swave;
  c.dprime = Vec3c(k2 * c.mprime, ky * c.mprime, d3);
  c.ddoubleprime = Vec3c(k2 * reduced_d, ky * reduced_d, k2 * kmy);
  return c;
}

cplx resolvent_determinant(const SpectralDrift& g, double x) {
  const cplx k = cplx(g.kappa2 + g.gammatilde, 2.0 * x);
  const cplx a = cplx(2.0 + g.gammatilde, 2.0 * x);
  const double w = g.shift;
  const double cs = std::cos(g.s);
  return a * (k * k + w * w) + 4.0 * g.eta2 * cs * (k * cs - w * std::sin(g.s));
}

Mat3c resolvent(const SpectralDrift& g, double x) {
  const double kg = g.kappa2 + g.gammatilde;
  const double w = g.shift;
  const cplx k(kg, 2.0 * x);
  const cplx a(2.0 + g.gammatilde, 2.0 * x);
  const cplx minus_branch(kg, 2.0 * x - w);  // kappa2 + gammatilde + i(2x - w)
  const cplx coupling = 2.0 * std::cos(g.s) * std::polar(1.0, -g.s);

  const cplx det = resolvent_determinant(g, x);
  const double scale = std::max({std::abs(a), std::abs(k) + std::abs(w), 2.0 * g.eta2, 2.0});
  if (!(std::abs(det) > 1e-14 * scale * scale * scale)) {
    throw SingularResolvent("resolvent: G~ + 2ix is numerically singular");
  }

  Mat3c adj = Mat3c::Zero();
  adj(0, 0) = k * k + w * w;
  adj(0, 1) = cplx(kg, 2.0 * x + w);
  adj(0, 2) = -g.eta2 * minus_branch;
  adj(2, 0) = coupling * minus_branch;
  adj(2, 1) = coupling;
  adj(2, 2) = a * minus_branch + 2.0 * g.eta2 * std::cos(g.s) * std::polar(1.0, g.s);
  return adj / det;
}

InelasticSpectrum::InelasticSpectrum(const ScatteringScalars& sc, const DriveConfig& dc)
    : InelasticSpectrum(sc, reduced_scalars(sc, dc), dc) {}

InelasticSpectrum::InelasticSpectrum(const ScatteringScalars& sc, const ReducedScalars& rs,
                                     const DriveConfig& dc)
    : drift_(build_spectral_drift(rs, dc.eta, sc.s, dc.gammatilde)),
      coeffs_(spectral_coefficients(sc, rs, dc.eta)),
      norm2_pdg_(sc.norm2_pdg) {
  validate(dc);
  const double d = rs.denominator();
  prefactor_ = dc.eta2() / (pi * d * d);
}

double InelasticSpectrum::operator()(double x) const {
  if (prefactor_ == 0.0) return 0.0;
  const Mat3c r = resolvent(drift_, x);
  const cplx form = bilinear(coeffs_.cprime, r, coeffs_.dprime) +
                    norm2_pdg_ * bilinear(coeffs_.cdoubleprime, r, coeffs_.ddoubleprime);
  return prefactor_ * 2.0 * form.real();
}

double sigma_inel_x(const ScatteringScalars& sc, const DriveConfig& dc, double x) {
  return InelasticSpectrum(sc, dc)(x);
}

ElasticLine elastic_line(const ScatteringScalars& sc, const DriveConfig& dc) {
  return {sigma_el(sc, dc), 0.0};
}

double elastic_lorentzian(double weight, double gammatilde, double x) {
  const double h = 0.5 * gammatilde;
  return weight * (gammatilde / (2.0 * pi)) / (x * x + h * h);
}

double sigma_tot_x(const ScatteringScalars& sc, const DriveConfig& dc, double x) {
  require_positive_width(dc.gammatilde, "sigma_tot_x");
  return elastic_lorentzian(sigma_el(sc, dc), dc.gammatilde, x) + sigma_inel_x(sc, dc, x);
}

double mollow_inel_x(double ztilde, double eta, double gammatilde, double x) {
  const double eta2 = eta * eta;
  const double z = 2.0 * ztilde;
  const double z2 = z * z;
  const double g = gammatilde;
  const double x2 = x * x;
  const double two_g = 2.0 + g;
  const double one_g = 1.0 + g;

  const double p = two_g * (one_g * one_g + 2.0 * eta2 + z2) * (two_g * two_g + 2.0 * eta2 + 4.0 * x2) +
                   2.0 * g *
                       (2.0 * (2.0 * x2 - eta2) * (2.0 * x2 - eta2) +
                        two_g * two_g * (2.0 * x2 + eta2));
  const double q1 = two_g * (one_g * one_g + z2) + 4.0 * one_g * eta2 - 4.0 * (4.0 + 3.0 * g) * x2;
  const double q2 = 3.0 * g * g + 8.0 * g + 5.0 + z2 + 4.0 * eta2 - 4.0 * x2;
  const double q = q1 * q1 + 4.0 * x2 * q2 * q2;
  const double den = z2 + 1.0 + 2.0 * eta2;
  return 4.0 * eta2 * p / (pi * q * den * den);
}

double mollow_tot_x(double ztilde, double eta, double gammatilde, double x) {
  require_positive_width(gammatilde, "mollow_tot_x");
  return elastic_lorentzian(mollow_xsections(ztilde, eta).elastic, gammatilde, x) +
         mollow_inel_x(ztilde, eta, gammatilde, x);
}

double low_intensity_x(const ScatteringScalars& sc, double ztilde, double gammatilde, double eta,
                       double x) {
  const double eta2 = eta * eta;
  const double s = sc.s;
  const double zt2q = ztilde * ztilde + 0.25;
  const double f = std::pow(2.0 * ztilde * std::sin(s) + std::cos(s), 2);
  const double w2 = (1.0 + gammatilde) * (1.0 + gammatilde);
  const double lp = 4.0 * (x + ztilde) * (x + ztilde) + w2;
  const double lm = 4.0 * (x - ztilde) * (x - ztilde) + w2;

  const double pair = eta2 / (2.0 * pi) *
                      (sc.norm2_pdg * (1.0 + gammatilde) / zt2q +
                       gammatilde * f / (4.0 * zt2q * zt2q)) *
                      (1.0 / lp + 1.0 / lm);
  const double product = 2.0 * eta2 * f * (ztilde * ztilde + 0.25 * w2) / (pi * zt2q * zt2q * lp * lm);
  return pair + product;
}

AngularSpectralData angular_data(const PhaseShiftTable& table, const DriveConfig& dc, double theta) {
  validate(dc);
  const ScatteringScalars sc = scalars_from_phase_shifts(table);
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const auto [gp, gm] = g_pm(table, theta);
  const cplx dg = gp - gm;
  const double eta = dc.eta;
  const double eta2 = dc.eta2();
  const double k2 = rs.kappa2;
  const double y = rs.y;
  const double d = rs.denominator();
  const double root4pi = std::sqrt(4.0 * pi);
  const cplx e2 = std::polar(1.0, 2.0 * sc.delta0_minus);
  const cplx ky(k2, y);
  const double cos_s = std::cos(sc.s);

  AngularSpectralData out;
  out.a_theta = gm + dg * (eta2 * k2 / d) - e2 * ky / (root4pi * d);
  out.m_theta = dg * (1.0 - eta2 * k2 / d) + e2 * ky / (root4pi * d);
  out.c_theta = Vec3c(eta * dg, 0.0, -e2 / root4pi);
  const cplx bracket = rs.norm2_dg * (y * y + k2 * k2) + k2 * y * std::sin(2.0 * sc.s) +
                       2.0 * k2 * k2 * cos_s * cos_s;
  out.d_theta = Vec3c(eta * k2 / d * out.m_theta, out.m_theta / d * ky,
                      -eta2 / (d * d) * (e2 / root4pi * bracket + dg * k2 * cplx(k2, -y)));
  return out;
}

SpectralDensity spectral_diff(const PhaseShiftTable& table, const DriveConfig& dc, double theta,
                              double x) {
  require_positive_width(dc.gammatilde, "spectral_diff");
  const AngularSpectralData ad = angular_data(table, dc, theta);
  const ScatteringScalars sc = scalars_from_phase_shifts(table);
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const DriftMatrix g = build_drift(rs, dc.eta, sc.s);

  const Mat3c shifted = g.m + cplx(dc.gammatilde, 2.0 * x) * Mat3c::Identity();
  const auto lu = shifted.fullPivLu();
  if (!lu.isInvertible()) throw SingularResolvent("spectral_diff: singular G' + gammatilde + 2ix");
  const Vec3c solved = lu.solve(ad.d_theta);
  const cplx form = ad.c_theta.dot(solved);  // conjugates c_theta

  SpectralDensity out;
  out.elastic = elastic_lorentzian(std::norm(ad.a_theta), dc.gammatilde, x);
  out.inelastic = 2.0 * form.real() / pi;
  return out;
}

std::vector<Peak> find_local_maxima(const std::function<double(double)>& f, double lo, double hi,
                                    int n_grid, double xtol) {
  if (n_grid < 3 || !(hi > lo)) throw std::invalid_argument("find_local_maxima: bad grid");
  const double h = (hi - lo) / (n_grid - 1);
  std::vector<double> vals(n_grid);
  for (int i = 0; i < n_grid; ++i) vals[i] = f(lo + i * h);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<Peak> peaks;
  for (int i = 1; i + 1 < n_grid; ++i) {
    if (!(vals[i] > vals[i - 1] && vals[i] >= vals[i + 1])) continue;
    double a = lo + (i - 1) * h;
    double b = lo + (i + 1) * h;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    const double xm = 0.5 * (a + b);
    peaks.push_back({xm, f(xm)});
  }
  return peaks;
}

}  // namespace qsatom
