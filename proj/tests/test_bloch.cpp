#include <doctest.h>

#include <cmath>

#include "qsatom/bloch.hpp"
#include "qsatom/oracle.hpp"
#include "qsatom/testgen.hpp"

using namespace qsatom;

namespace {

ScatteringScalars reference_scalars() { return make_scattering_scalars(-0.03, 0.13, 0.005, 0.005, 0.02, -0.001); }

DriftMatrix drift_for(const ScatteringScalars& sc, const DriveConfig& dc) {
  return build_drift(reduced_scalars(sc, dc), dc.eta, sc.s);
}

DriftMatrix mollow_drift(double eta2, double ztilde = 0.0) {
  return drift_for(no_direct_scattering(), DriveConfig::from_eta2(eta2, ztilde));
}

}  // namespace

TEST_CASE("drift at zero drive") {
  const Mat3c g = mollow_drift(0.0).m;
  CHECK(g(0, 0) == cplx(2.0));
  CHECK(g(1, 1) == cplx(1.0));
  CHECK(g(2, 2) == cplx(1.0));
  CHECK(g(0, 1) == cplx(0.0));
  CHECK(g(0, 2) == cplx(0.0));
}

TEST_CASE("Mollow drift entrywise") {
  const double eta = 1.7, zt = 0.3;
  const Mat3c g = mollow_drift(eta * eta, zt).m;
  const double z = 2 * zt;
  Mat3c expect;
  expect << 2, -eta, -eta, 2 * eta, cplx(1, -z), 0, 2 * eta, 0, cplx(1, z);
  CHECK((g - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("property: drift structure and determinant") {
  gen::Rng rng(gen::default_seed + 10);
  for (int i = 0; i < 300; ++i) {
    const ScatteringScalars sc = gen::scalars(rng);
    const DriveConfig dc = gen::drive(rng);
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const Mat3c g = build_drift(rs, dc.eta, sc.s).m;
    CHECK(g(1, 2) == cplx(0.0));
    CHECK(g(2, 1) == cplx(0.0));
    CHECK(g(2, 2) == std::conj(g(1, 1)));
    CHECK(g(2, 0) == std::conj(g(1, 0)));
    const double d = rs.denominator();
    CHECK(std::abs(det3(g) - 2.0 * d) <= 1e-12 * 2.0 * d);
    CHECK(spectral_abscissa_min(g) > 0.0);
  }
}

TEST_CASE("det identity at the reference scalars") {
  const DriveConfig dc = DriveConfig::from_eta2(10.0, 0.0);
  const ReducedScalars rs = reduced_scalars(reference_scalars(), dc);
  const Mat3c g = drift_for(reference_scalars(), dc).m;
  CHECK(std::abs(det3(g) - 2.0 * rs.denominator()) < 1e-12 * rs.denominator());
}

TEST_CASE("equilibrium special values") {
  const EquilibriumState e0 = equilibrium(reduced_scalars(reference_scalars(), DriveConfig{0.0, 0.5, 0.0}), 0.0);
  CHECK(e0.u_inf == 0.0);
  CHECK(std::abs(e0.v_inf) == 0.0);
  const EquilibriumState e1 = equilibrium(reduced_scalars(no_direct_scattering(), DriveConfig{1, 0, 0}), 1.0);
  CHECK(e1.u_inf == doctest::Approx(1.0 / 3));
  CHECK(std::abs(e1.v_inf - cplx(1.0 / 3)) < 1e-15);
}

TEST_CASE("equilibrium vs generic linear solve") {
  const DriveConfig dc = DriveConfig::from_eta2(28.0, 3.0);
  const ReducedScalars rs = reduced_scalars(reference_scalars(), dc);
  const EquilibriumState eq = equilibrium(rs, dc.eta);
  const Mat3c g = drift_for(reference_scalars(), dc).m;
  const Vec3c sol = generic_inverse(g) * Vec3c(0.0, dc.eta, dc.eta);
  CHECK(std::abs(sol(0) - eq.u_inf) < 1e-13);
  CHECK(std::abs(sol(1) - eq.v_inf) < 1e-13);
  CHECK(std::abs(sol(2) - std::conj(eq.v_inf)) < 1e-13);
}

TEST_CASE("property: equilibrium is a state and a fixed point") {
  gen::Rng rng(gen::default_seed + 11);
  for (int i = 0; i < 200; ++i) {
    const ScatteringScalars sc = gen::scalars(rng);
    const DriveConfig dc = gen::drive(rng);
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const EquilibriumState eq = equilibrium(rs, dc.eta);
    CHECK(eq.state().is_state(1e-12));
    const DriftMatrix g = build_drift(rs, dc.eta, sc.s);
    const Vec3c res = g.m * eq.state().as_vector() - Vec3c(0.0, dc.eta, dc.eta);
    CHECK(res.norm() <= 1e-12 * std::max(1.0, dc.eta));
    for (double tau : {0.3, 4.0, 50.0}) {
      const BlochVector b = evolve(g, eq.state(), dc.eta, tau);
      CHECK(std::abs(b.u - eq.u_inf) < 1e-12);
      CHECK(std::abs(b.v - eq.v_inf) < 1e-12);
    }
  }
}

TEST_CASE("evolve: argument checks and trivial time") {
  const DriftMatrix g = mollow_drift(4.0);
  const BlochVector x0{0.2, cplx(0.1, -0.2)};
  CHECK_THROWS_AS(evolve(g, x0, 2.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(evolve(g, BlochVector{1.5, 0.0}, 2.0, 1.0), std::invalid_argument);
  const BlochVector same = evolve(g, x0, 2.0, 0.0);
  CHECK(same.u == x0.u);
  CHECK(same.v == x0.v);
}

TEST_CASE("evolve relaxes to equilibrium") {
  gen::Rng rng(gen::default_seed + 12);
  for (int i = 0; i < 30; ++i) {
    const ScatteringScalars sc = gen::scalars(rng);
    const DriveConfig dc = gen::drive(rng);
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const EquilibriumState eq = equilibrium(rs, dc.eta);
    const BlochVector b = evolve(build_drift(rs, dc.eta, sc.s), BlochVector{0.0, 0.0}, dc.eta, 200.0);
    CHECK(std::abs(b.u - eq.u_inf) < 1e-10);
    CHECK(std::abs(b.v - eq.v_inf) < 1e-10);
  }
}

TEST_CASE("property: evolution keeps states positive") {
  gen::Rng rng(gen::default_seed + 13);
  for (int i = 0; i < 100; ++i) {
    const ScatteringScalars sc = gen::scalars(rng);
    const DriveConfig dc = gen::drive(rng);
    const DriftMatrix g = drift_for(sc, dc);
    // Random pure or mixed initial state on/inside the Bloch ball.
    const double r = std::sqrt(gen::uniform(rng, 0, 1));
    const double th = gen::uniform(rng, 0, pi), ph = gen::uniform(rng, 0, 2 * pi);
    const BlochVector x0{0.5 * (1 + r * std::cos(th)), 0.5 * r * std::sin(th) * std::polar(1.0, ph)};
    REQUIRE(x0.is_state(1e-12));
    for (double tau : {0.01, 0.5, 3.0, 30.0}) CHECK(evolve(g, x0, dc.eta, tau).is_state(1e-10));
  }
}

TEST_CASE("Mollow eigenvalue threshold at eta^2 = 1/16") {
  auto disc = [](double eta2) {
    return cubic_discriminant(characteristic_polynomial(mollow_drift(eta2).m)).real();
  };
  CHECK(disc(1.0 / 16 - 1e-3) > 0.0);
  CHECK(disc(1.0 / 16 + 1e-3) < 0.0);
  // Below threshold all roots are real; above, a complex pair.
  Eigen::ComplexEigenSolver<Mat3c> below(mollow_drift(0.05).m);
  Eigen::ComplexEigenSolver<Mat3c> above(mollow_drift(0.2).m);
  CHECK(below.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-10);
  CHECK(above.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("defective drift takes the Pade route") {
  const Mat3c g = mollow_drift(1.0 / 16).m;
  const MatrixExp e = matrix_exp(-0.5 * g);
  CHECK(e.route == ExpRoute::pade);
  const MatrixExp ok = matrix_exp(-0.5 * mollow_drift(4.0).m);
  CHECK(ok.route == ExpRoute::eigendecomposition);
  // Both routes agree with RK4 through the threshold.
  const BlochVector x0{0.0, 0.0};
  const BlochVector a = evolve(DriftMatrix{g}, x0, 0.25, 3.0);
  const BlochVector b = ode_evolve(DriftMatrix{g}, 0.25, x0, 3.0);
  CHECK(std::abs(a.u - b.u) < 1e-10);
  CHECK(std::abs(a.v - b.v) < 1e-10);
}

TEST_CASE("propagate_deviation") {
  const DriftMatrix g = drift_for(reference_scalars(), DriveConfig::from_eta2(18.0, -1.0));
  CHECK(propagate_deviation(g, 0.3, Vec3c::Zero(), 2.0).norm() == 0.0);
  const Vec3c d0(cplx(0.3, 0.1), cplx(-0.2, 0.5), cplx(0.7, -0.4));
  CHECK((propagate_deviation(g, 0.3, d0, 0.0) - d0).norm() == 0.0);
  CHECK_THROWS_AS(propagate_deviation(g, 0.3, d0, -0.1), std::invalid_argument);

  // RK4 on d' = -(G'/2 + gammatilde/2) d.
  const double gt = 0.3, tau = 1.7;
  Vec3c d = d0;
  const int n = 17000;
  const double h = tau / n;
  auto f = [&](const Vec3c& v) -> Vec3c { return -0.5 * (g.m * v) - 0.5 * gt * v; };
  for (int i = 0; i < n; ++i) {
    const Vec3c k1 = f(d), k2 = f(d + 0.5 * h * k1), k3 = f(d + 0.5 * h * k2), k4 = f(d + h * k3);
    d += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  CHECK((propagate_deviation(g, gt, d0, tau) - d).norm() < 1e-10);
  // Linearity.
  const Vec3c d1(cplx(0, 1), 1.0, cplx(2, 2));
  const Vec3c lhs = propagate_deviation(g, gt, 2.0 * d0 - 3.0 * d1, tau);
  const Vec3c rhs = 2.0 * propagate_deviation(g, gt, d0, tau) - 3.0 * propagate_deviation(g, gt, d1, tau);
  CHECK((lhs - rhs).norm() < 1e-13);
}
