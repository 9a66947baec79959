#include "qsatom/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qsatom/quadrature.hpp"
#include "qsatom/xsection.hpp"

namespace qsatom {

namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

BlochVector ode_evolve(const DriftMatrix& g, double eta, const BlochVector& x0, double tau,
                       double max_step) {
  if (!(tau >= 0.0)) throw std::invalid_argument("ode_evolve: tau must be >= 0");
  if (tau == 0.0) return x0;
  const Vec3c source(0.0, 0.5 * eta, 0.5 * eta);
  auto rhs = [&](const Vec3c& w) -> Vec3c { return -0.5 * (g.m * w) + source; };

  const long steps = static_cast<long>(std::ceil(tau / max_step));
  const double h = tau / static_cast<double>(steps);
  Vec3c w = x0.as_vector();
  for (long i = 0; i < steps; ++i) {
    const Vec3c k1 = rhs(w);
    const Vec3c k2 = rhs(w + 0.5 * h * k1);
    const Vec3c k3 = rhs(w + 0.5 * h * k2);
    const Vec3c k4 = rhs(w + h * k3);
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return BlochVector::from_vector(w);
}

double spectrum_time_domain(const ScatteringScalars& sc, const DriveConfig& dc, double x,
                            double max_tau) {
  validate(dc);
  const double eta = dc.eta;
  if (eta == 0.0) return 0.0;
  const double eta2 = eta * eta;
  const ReducedScalars rs = reduced_scalars(sc, dc);
  const SpectralCoefficients co = spectral_coefficients(sc, rs, eta);
  const double d = rs.denominator();
  const double s = sc.s;

  // Vectors carried from the G~ frame into the G' frame by diag(eta, 1, -eta^2).
  const Vec3c c1(I * eta * std::polar(1.0, s) * std::sin(s), 0.0, -1.0);
  const Vec3c d1(eta * co.dprime(0), co.dprime(1), -eta2 * co.dprime(2));
  const Vec3c c2(eta * sc.norm2_pdg, 0.0, 0.0);
  const Vec3c d2(eta * co.ddoubleprime(0), co.ddoubleprime(1), -eta2 * co.ddoubleprime(2));

  const Mat3c a = build_drift(rs, eta, s).m + cplx(dc.gammatilde, 2.0 * x) * Mat3c::Identity();
  const double h = std::min(1e-3, 0.05 / a.cwiseAbs().rowwise().sum().maxCoeff());

  // State: the two propagated vectors and the running integrals.
  Vec3c w1 = d1, w2 = d2;
  cplx acc = 0.0;
  auto step = [&](Vec3c& w, const Vec3c& c) {
    auto f = [&](const Vec3c& v) -> Vec3c { return -(a * v); };
    const Vec3c k1 = f(w);
    const Vec3c k2 = f(w + 0.5 * h * k1);
    const Vec3c k3 = f(w + 0.5 * h * k2);
    const Vec3c k4 = f(w + h * k3);
    // The integral of c^dagger w is a linear functional of the same stages.
    const Vec3c q1 = w;
    const Vec3c q2 = w + 0.5 * h * k1;
    const Vec3c q3 = w + 0.5 * h * k2;
    const Vec3c q4 = w + h * k3;
    acc += c.dot(h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4));
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  const double scale = std::max(d1.norm(), c2.norm() * d2.norm());
  double tau = 0.0;
  while (true) {
    step(w1, c1);
    step(w2, c2);
    tau += h;
    if (std::max(w1.norm(), c2.norm() * w2.norm()) < 1e-12 * scale) break;
    if (tau > max_tau) {
      throw OracleNonConvergence("spectrum_time_domain: correlation did not decay");
    }
  }
  return 2.0 * acc.real() / (pi * d * d);
}

const char* to_string(SumRuleStatus s) {
  switch (s) {
    case SumRuleStatus::pass: return "pass";
    case SumRuleStatus::sum_rule_violation: return "sum_rule_violation";
    case SumRuleStatus::quadrature_failure: return "quadrature_failure";
  }
  return "unknown";
}

double relative_error(double a, double b, double floor) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

SumRuleReport quad_sum_rules(const ScatteringScalars& sc, const DriveConfig& dc, double tol) {
  return quad_sum_rules(InelasticSpectrum(sc, dc), sc, dc, tol);
}

SumRuleReport quad_sum_rules(const InelasticSpectrum& inel, const ScatteringScalars& sc,
                             const DriveConfig& dc, double tol) {
  if (!(dc.gammatilde > 0.0)) throw std::invalid_argument("quad_sum_rules: gammatilde must be > 0");
  const double weight = sigma_el(sc, dc);
  const double width = spectrum_window(dc.eta, dc.ztilde);

  SumRuleReport r;
  r.inel_expected = sigma_inel(sc, dc);
  r.tot_expected = sigma_tot(sc, dc);
  const QuadResult qi = integrate_real_line([&](double x) { return inel(x); }, width);
  const QuadResult qt = integrate_real_line(
      [&](double x) { return elastic_lorentzian(weight, dc.gammatilde, x) + inel(x); }, width);
  r.inel_integral = qi.value;
  r.inel_error = qi.error;
  r.tot_integral = qt.value;
  r.tot_error = qt.error;
  r.quadrature_converged = qi.converged && qt.converged;

  // An exactly vanishing expectation is compared in absolute terms.
  const double floor = 1e-12 / tol;
  r.inel_residual = relative_error(r.inel_integral, r.inel_expected, floor);
  r.tot_residual = relative_error(r.tot_integral, r.tot_expected, floor);

  if (!r.quadrature_converged) {
    r.status = SumRuleStatus::quadrature_failure;
  } else if (r.inel_residual > tol || r.tot_residual > tol) {
    r.status = SumRuleStatus::sum_rule_violation;
  }
  return r;
}

Mat3c generic_inverse(const Mat3c& a) {
  // Augmented [a | 1] reduced to [1 | a^{-1}].
  Eigen::Matrix<cplx, 3, 6> m;
  m << a, Mat3c::Identity();
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    }
    if (std::abs(m(piv, col)) == 0.0) throw std::domain_error("generic_inverse: singular matrix");
    m.row(col).swap(m.row(piv));
    m.row(col) /= m(col, col);
    for (int r = 0; r < 3; ++r) {
      if (r != col) m.row(r) -= m(r, col) * m.row(col);
    }
  }
  return m.rightCols<3>();
}

cplx det3(const Mat3c& a) {
  return a(0, 0) * a(1, 1) * a(2, 2) + a(0, 1) * a(1, 2) * a(2, 0) + a(0, 2) * a(1, 0) * a(2, 1) -
         a(0, 2) * a(1, 1) * a(2, 0) - a(0, 0) * a(1, 2) * a(2, 1) - a(0, 1) * a(1, 0) * a(2, 2);
}

Mat3c resolvent_full(const SpectralDrift& g, double x) {
  Mat3c r = resolvent(g, x);
  const Mat3c a = g.matrix + cplx(0.0, 2.0 * x) * Mat3c::Identity();
  // A(1,2) = A(2,1) = 0, so the middle adjugate row has three short cofactors.
  const cplx p = a(1, 0), d = a(2, 2), r31 = a(2, 0);
  const cplx det = resolvent_determinant(g, x);
  r(1, 0) = -p * d / det;
  r(1, 1) = (a(0, 0) * d - a(0, 2) * r31) / det;
  r(1, 2) = a(0, 2) * p / det;
  return r;
}

double collimated_overlap(int l) { return 0.5 * std::sqrt(2.0 * l + 1.0); }

FiniteBeamModel make_finite_beam(int L, double dtheta) {
  if (L < 0) throw std::invalid_argument("make_finite_beam: L must be >= 0");
  if (!(dtheta > 0.0) || !(dtheta < pi)) {
    throw std::invalid_argument("make_finite_beam: dtheta must be in (0, pi)");
  }
  FiniteBeamModel fb{L, dtheta, std::vector<double>(L + 1)};
  const double lower = std::cos(dtheta);
  const double sin_half = std::sin(0.5 * dtheta);
  const double norm = 2.0 * pi / (dtheta * std::sqrt(2.0 * pi * 2.0 * sin_half * sin_half));
  const GaussLegendre gl = gauss_legendre(64);
  const double half = 0.5 * (1.0 - lower);
  const double mid = 0.5 * (1.0 + lower);
  std::vector<double> integral(L + 1, 0.0);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const std::vector<double> p = legendre_values(L, mid + half * gl.nodes[i]);
    for (int l = 0; l <= L; ++l) integral[l] += gl.weights[i] * half * p[l];
  }
  for (int l = 0; l <= L; ++l) {
    fb.overlaps[l] = norm * std::sqrt((2.0 * l + 1.0) / (4.0 * pi)) * integral[l];
  }
  return fb;
}

namespace {

using Mat2c = Eigen::Matrix2cd;

struct BeamOperators {
  Eigen::Matrix3cd gram;  // Gram matrix of the jump-operator coefficients
  std::array<Mat2c, 3> k;  // sigma_-, P+, P-
  Mat2c h;
  double influx = 0.0;
};

BeamOperators beam_operators(const FiniteBeamModel& fb, const PhaseShiftTable& t,
                             const DriveConfig& dc) {
  validate(dc);
  if (t.lmax() > fb.L) {
    throw std::invalid_argument("finite beam: phase-shift table exceeds the truncation L");
  }
  const double eta = dc.eta;
  const double lam2 = dc.eta2() / (fb.dtheta * fb.dtheta);
  auto lambda = [&](int l) { return eta * fb.overlaps[l]; };

  // <S^a lambda | S^b lambda> for a, b in {+, -}.
  auto inner = [&](bool a_plus, bool b_plus) {
    cplx acc = lam2;
    for (int l = 0; l <= fb.L; ++l) {
      const double da = a_plus ? t.delta_plus(l) : t.delta_minus(l);
      const double db = b_plus ? t.delta_plus(l) : t.delta_minus(l);
      acc += lambda(l) * lambda(l) * (std::polar(1.0, 2.0 * (db - da)) - 1.0);
    }
    return acc;
  };

  const cplx a_sp = std::polar(1.0, 2.0 * t.delta_plus(0)) * lambda(0);
  const cplx a_sm = std::polar(1.0, 2.0 * t.delta_minus(0)) * lambda(0);
  const double beta = std::arg(-std::conj(a_sm));
  const cplx phase = std::polar(1.0, beta);

  BeamOperators ops;
  Eigen::Matrix3cd& w = ops.gram;
  w(0, 0) = 1.0;
  w(0, 1) = phase * a_sp;
  w(0, 2) = phase * a_sm;
  w(1, 1) = inner(true, true);
  w(2, 2) = inner(false, false);
  w(1, 2) = inner(true, false);
  w(1, 0) = std::conj(w(0, 1));
  w(2, 0) = std::conj(w(0, 2));
  w(2, 1) = std::conj(w(1, 2));

  ops.k[0] << 0.0, 0.0, 1.0, 0.0;
  ops.k[1] << 1.0, 0.0, 0.0, 0.0;
  ops.k[2] << 0.0, 0.0, 0.0, 1.0;
  Mat2c sz, sy;
  sz << 1.0, 0.0, 0.0, -1.0;
  sy << 0.0, -I, I, 0.0;
  ops.h = -0.5 * dc.ztilde * sz - 0.5 * std::abs(a_sm) * sy;
  ops.influx = lam2;
  return ops;
}

Mat2c jump_sum(const BeamOperators& ops) {
  Mat2c rr = Mat2c::Zero();
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) rr += ops.gram(p, q) * ops.k[p].adjoint() * ops.k[q];
  }
  return rr;
}

}  // namespace

Eigen::Matrix2cd finite_beam_equilibrium(const FiniteBeamModel& fb, const PhaseShiftTable& t,
                                         const DriveConfig& dc) {
  const BeamOperators ops = beam_operators(fb, t, dc);
  const Mat2c rr = jump_sum(ops);
  auto liouvillian = [&](const Mat2c& rho) {
    Mat2c out = -I * (ops.h * rho - rho * ops.h) - 0.5 * (rr * rho + rho * rr);
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) out += ops.gram(q, p) * ops.k[p] * rho * ops.k[q].adjoint();
    }
    return out;
  };

  // Row-major vectorization; the last equation is replaced by Tr rho = 1.
  Eigen::Matrix4cd m;
  for (int k = 0; k < 4; ++k) {
    Mat2c e = Mat2c::Zero();
    e(k / 2, k % 2) = 1.0;
    const Mat2c col = liouvillian(e);
    for (int j = 0; j < 4; ++j) m(j, k) = col(j / 2, j % 2);
  }
  m.row(3) << 1.0, 0.0, 0.0, 1.0;
  const Eigen::Vector4cd b(0.0, 0.0, 0.0, 1.0);
  const Eigen::Vector4cd sol = m.fullPivLu().solve(b);
  Mat2c rho;
  rho << sol(0), sol(1), sol(2), sol(3);

  const Mat2c herm = 0.5 * (rho + rho.adjoint());
  const Eigen::SelfAdjointEigenSolver<Mat2c> es(herm);
  if (!sol.allFinite() || es.eigenvalues().minCoeff() < -1e-10 ||
      (rho - herm).norm() > 1e-10) {
    throw NonPositiveEquilibrium("finite beam: equilibrium is not a density matrix");
  }
  return rho;
}

BalanceReport finite_beam_balance(const FiniteBeamModel& fb, const PhaseShiftTable& t,
                                  const DriveConfig& dc) {
  const BeamOperators ops = beam_operators(fb, t, dc);
  BalanceReport r;
  r.rho = finite_beam_equilibrium(fb, t, dc);
  r.influx = ops.influx;
  r.outflux = (jump_sum(ops) * r.rho).trace().real();
  r.residual = r.influx > 0.0 ? std::abs(r.outflux - r.influx) / r.influx
                              : std::abs(r.outflux);
  return r;
}

}  // namespace qsatom
