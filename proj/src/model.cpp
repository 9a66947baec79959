#include "qsatom/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsatom {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

const double inv_sqrt_4pi = 1.0 / std::sqrt(4.0 * pi);

}  // namespace

PhaseShiftTable::PhaseShiftTable(std::vector<double> delta_plus, std::vector<double> delta_minus)
    : plus_(std::move(delta_plus)), minus_(std::move(delta_minus)) {
  if (plus_.empty() || plus_.size() != minus_.size()) {
    throw std::invalid_argument(
        "phase-shift lists must be non-empty and of equal length (lmax + 1)");
  }
  for (std::size_t l = 0; l < plus_.size(); ++l) {
    require_finite(plus_[l], "delta_plus");
    require_finite(minus_[l], "delta_minus");
  }
}

PhaseShiftTable PhaseShiftTable::none(int lmax) {
  if (lmax < 0) throw std::invalid_argument("lmax must be >= 0");
  return {std::vector<double>(lmax + 1, 0.0), std::vector<double>(lmax + 1, 0.0)};
}

double PhaseShiftTable::delta_plus(int l) const {
  return (l >= 0 && l <= lmax()) ? plus_[l] : 0.0;
}

double PhaseShiftTable::delta_minus(int l) const {
  return (l >= 0 && l <= lmax()) ? minus_[l] : 0.0;
}

double ScatteringScalars::norm2_g_plus() const {
  const double sn = std::sin(delta0_plus);
  return sn * sn + norm2_pg_plus;
}

double ScatteringScalars::norm2_g_minus() const {
  const double sn = std::sin(delta0_minus);
  return sn * sn + norm2_pg_minus;
}

double ScatteringScalars::norm2_dg() const {
  const double sn = std::sin(s);
  return sn * sn + norm2_pdg;
}

bool satisfies_triangle_bound(const ScatteringScalars& sc, double tol) {
  const double a = std::sqrt(sc.norm2_pg_plus);
  const double b = std::sqrt(sc.norm2_pg_minus);
  const double c = std::sqrt(sc.norm2_pdg);
  return c >= std::abs(a - b) - tol && c <= a + b + tol;
}

ScatteringScalars make_scattering_scalars(double delta0_plus, double delta0_minus,
                                          double norm2_pg_plus, double norm2_pg_minus,
                                          double norm2_pdg, double eps_r) {
  require_finite(delta0_plus, "delta0_plus");
  require_finite(delta0_minus, "delta0_minus");
  require_finite(norm2_pg_plus, "norm2_pg_plus");
  require_finite(norm2_pg_minus, "norm2_pg_minus");
  require_finite(norm2_pdg, "norm2_pdg");
  require_finite(eps_r, "eps_r");
  if (norm2_pg_plus < 0.0 || norm2_pg_minus < 0.0 || norm2_pdg < 0.0) {
    throw std::invalid_argument("squared norms must be non-negative");
  }

  ScatteringScalars sc;
  sc.delta0_plus = delta0_plus;
  sc.delta0_minus = delta0_minus;
  sc.s = delta0_plus - delta0_minus;
  sc.norm2_pg_plus = norm2_pg_plus;
  sc.norm2_pg_minus = norm2_pg_minus;
  sc.norm2_pdg = norm2_pdg;
  sc.eps_r = eps_r;
  sc.cross_pg = 0.5 * (norm2_pg_plus + norm2_pg_minus - norm2_pdg);
  if (!satisfies_triangle_bound(sc)) {
    throw std::invalid_argument(
        "norm2_pdg violates the triangle bound with norm2_pg_plus / norm2_pg_minus");
  }
  return sc;
}

ScatteringScalars no_direct_scattering() { return {}; }

ScatteringScalars scalars_from_phase_shifts(const PhaseShiftTable& table) {
  ScatteringScalars sc;
  sc.delta0_plus = table.delta_plus(0);
  sc.delta0_minus = table.delta_minus(0);
  sc.s = sc.delta0_plus - sc.delta0_minus;

  double pg_plus = 0.0, pg_minus = 0.0, pdg = 0.0, eps_sum = 0.0;
  for (int l = 1; l <= table.lmax(); ++l) {
    const double w = 2.0 * l + 1.0;
    const double sp = std::sin(table.delta_plus(l));
    const double sm = std::sin(table.delta_minus(l));
    const double diff = table.delta_plus(l) - table.delta_minus(l);
    const double sd = std::sin(diff);
    pg_plus += w * sp * sp;
    pg_minus += w * sm * sm;
    pdg += w * sd * sd;
    eps_sum += w * std::sin(2.0 * diff);
  }
  sc.norm2_pg_plus = pg_plus;
  sc.norm2_pg_minus = pg_minus;
  sc.norm2_pdg = pdg;
  sc.eps_r = -0.25 * eps_sum;
  sc.cross_pg = 0.5 * (pg_plus + pg_minus - pdg);
  return sc;
}

DriveConfig DriveConfig::from_eta2(double eta2, double ztilde, double gammatilde) {
  if (!(eta2 >= 0.0)) throw std::invalid_argument("eta2 must be >= 0");
  return {std::sqrt(eta2), ztilde, gammatilde};
}

void validate(const DriveConfig& dc) {
  require_finite(dc.eta, "eta");
  require_finite(dc.ztilde, "ztilde");
  require_finite(dc.gammatilde, "gammatilde");
  if (dc.eta < 0.0) throw std::invalid_argument("eta must be >= 0");
  if (dc.gammatilde < 0.0) throw std::invalid_argument("gammatilde must be >= 0");
}

ReducedScalars reduced_scalars(const ScatteringScalars& sc, const DriveConfig& dc) {
  const double eta2 = dc.eta2();
  const double pdg = sc.norm2_pdg;
  const double half_sin2s = 0.5 * eta2 * std::sin(2.0 * sc.s);

  ReducedScalars rs;
  rs.z = 2.0 * dc.ztilde - 2.0 * eta2 * sc.eps_r;
  rs.y = rs.z - half_sin2s;
  rs.norm2_dg = sc.norm2_dg();
  rs.kappa2 = 1.0 + eta2 * rs.norm2_dg;
  const double a = 1.0 + eta2 * pdg;
  rs.zeta2 = a * a + eta2 * (1.0 + rs.kappa2 + eta2 * pdg);
  rs.bprime = cplx(rs.kappa2, -(rs.z + half_sin2s));
  return rs;
}

std::vector<double> legendre_values(int lmax, double x) {
  std::vector<double> p(static_cast<std::size_t>(lmax) + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int l = 1; l < lmax; ++l) {
    p[l + 1] = ((2.0 * l + 1.0) * x * p[l] - l * p[l - 1]) / (l + 1.0);
  }
  return p;
}

std::pair<cplx, cplx> g_pm(const PhaseShiftTable& table, double theta) {
  const auto p = legendre_values(table.lmax(), std::cos(theta));
  cplx gp{0.0, 0.0}, gm{0.0, 0.0};
  for (int l = 0; l <= table.lmax(); ++l) {
    const double w = (2.0 * l + 1.0) * inv_sqrt_4pi * p[l];
    const double dp = table.delta_plus(l);
    const double dm = table.delta_minus(l);
    gp += w * std::sin(dp) * std::polar(1.0, dp);
    gm += w * std::sin(dm) * std::polar(1.0, dm);
  }
  const cplx i{0.0, 1.0};
  return {i * gp, i * gm};
}

cplx delta_g(const PhaseShiftTable& table, double theta) {
  const auto [gp, gm] = g_pm(table, theta);
  return gp - gm;
}

cplx delta_g_partial_waves(const PhaseShiftTable& table, double theta) {
  const auto p = legendre_values(table.lmax(), std::cos(theta));
  const cplx i{0.0, 1.0};
  const double d0p = table.delta_plus(0);
  const double d0m = table.delta_minus(0);
  cplx out = i * std::polar(1.0, d0p + d0m) * std::sin(d0p - d0m) * inv_sqrt_4pi;
  for (int l = 1; l <= table.lmax(); ++l) {
    const double dp = table.delta_plus(l);
    const double dm = table.delta_minus(l);
    out += i * ((2.0 * l + 1.0) * inv_sqrt_4pi) * std::polar(1.0, dp + dm) * std::sin(dp - dm) *
           p[l];
  }
  return out;
}

}  // namespace qsatom
