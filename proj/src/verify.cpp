#include "qsatom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "qsatom/bloch.hpp"
#include "qsatom/oracle.hpp"
#include "qsatom/spectrum.hpp"
#include "qsatom/sweep.hpp"
#include "qsatom/testgen.hpp"
#include "qsatom/xsection.hpp"

namespace qsatom {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string drive_label(const DriveConfig& dc) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "eta2=%g ztilde=%g gammatilde=%g", dc.eta2(), dc.ztilde,
                dc.gammatilde);
  return buf;
}

CheckResult bounded(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

// The spectrum path under test, optionally with the injected fault.
InelasticSpectrum spectrum_under_test(const RunConfig& cfg, const ScatteringScalars& sc,
                                      const DriveConfig& dc) {
  ReducedScalars rs = reduced_scalars(sc, dc);
  if (cfg.fault_injection == fault_bprime_sign) {
    const double w = 0.5 * dc.eta2() * std::sin(2.0 * sc.s);
    rs.bprime = cplx(rs.kappa2, -(rs.z - w));
    rs.y = rs.z + w;
  }
  return InelasticSpectrum(sc, rs, dc);
}

// Each check is a closure so a thrown error becomes a failed line, not an abort.
using Check = std::function<CheckResult()>;

std::vector<Check> drive_checks(const RunConfig& cfg, const DriveConfig& dc) {
  const ScatteringScalars sc = cfg.scalars;
  const std::string where = drive_label(dc);
  std::vector<Check> out;

  out.push_back([=] {
    const CrossSectionTriple c = cross_sections(sc, dc);
    return bounded("closed-form sum rule el + inel = tot",
                   relative_error(c.elastic + c.inelastic, c.total), 1e-12, where);
  });
  out.push_back([=] {
    const double scale = sigma_tot(sc, dc);
    return bounded("trace form = Fano form",
                   relative_error(sigma_tot_trace_form(sc, dc), scale), 1e-12, where);
  });
  out.push_back([=] {
    const SumRuleReport r = quad_sum_rules(spectrum_under_test(cfg, sc, dc), sc, dc);
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s; %s; inel %.12g vs %.12g; tot %.12g vs %.12g",
                  where.c_str(), to_string(r.status), r.inel_integral, r.inel_expected,
                  r.tot_integral, r.tot_expected);
    CheckResult c = bounded("spectral normalization (quadrature)",
                            std::max(r.inel_residual, r.tot_residual), 1e-6, buf);
    c.passed = c.passed && r.status == SumRuleStatus::pass;
    return c;
  });
  out.push_back([=] {
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const DriftMatrix g = build_drift(rs, dc.eta, sc.s);
    const EquilibriumState eq = equilibrium(rs, dc.eta);
    const Vec3c res = g.m * eq.state().as_vector() - Vec3c(0.0, dc.eta, dc.eta);
    return bounded("equilibrium is a fixed point", res.norm() / std::max(1.0, dc.eta), 1e-12,
                   where);
  });
  out.push_back([=] {
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const DriftMatrix g = build_drift(rs, dc.eta, sc.s);
    const double d = rs.denominator();
    return bounded("det G' = 2(z^2 + zeta^2)", std::abs(det3(g.m) - 2.0 * d) / (2.0 * d), 1e-12,
                   where);
  });
  out.push_back([=] {
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const DriftMatrix g = build_drift(rs, dc.eta, sc.s);
    const BlochVector x0{0.0, 0.0};
    double worst = 0.0;
    for (double tau : {0.5, 2.0, 5.0}) {
      const BlochVector a = evolve(g, x0, dc.eta, tau);
      const BlochVector b = ode_evolve(g, dc.eta, x0, tau);
      worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.v - b.v)});
    }
    return bounded("matrix exponential vs RK4", worst, 1e-8, where);
  });
  out.push_back([=] {
    const ReducedScalars rs = reduced_scalars(sc, dc);
    const SpectralDrift g = build_spectral_drift(rs, dc.eta, sc.s, dc.gammatilde);
    double worst = 0.0;
    for (double x : {-7.3, -1.1, 0.0, 0.4, 2.9, 11.0}) {
      const Mat3c full = resolvent_full(g, x);
      const Mat3c ref = generic_inverse(g.matrix + cplx(0.0, 2.0 * x) * Mat3c::Identity());
      worst = std::max(worst, (full - ref).cwiseAbs().maxCoeff());
    }
    return bounded("adjugate resolvent vs generic inverse", worst, 1e-12, where);
  });
  out.push_back([=] {
    const InelasticSpectrum inel = spectrum_under_test(cfg, sc, dc);
    double worst = 0.0;
    for (double x : {-3.0, 0.0, 1.7}) {
      const double ref = inel(x);
      const double td = spectrum_time_domain(sc, dc, x);
      worst = std::max(worst, std::abs(td - ref) / std::max(std::abs(ref), 1e-300));
    }
    return bounded("time-domain spectrum vs resolvent", dc.eta == 0.0 ? 0.0 : worst, 1e-6, where);
  });
  out.push_back([=] {
    ScatteringScalars flipped = sc;
    flipped.s = -sc.s;
    std::swap(flipped.delta0_plus, flipped.delta0_minus);
    flipped.eps_r = -sc.eps_r;
    const DriveConfig mirrored{dc.eta, -dc.ztilde, dc.gammatilde};
    const InelasticSpectrum a = spectrum_under_test(cfg, sc, dc);
    const InelasticSpectrum b = spectrum_under_test(cfg, flipped, mirrored);
    double worst = 0.0, lowest = HUGE_VAL;
    for (int k = -40; k <= 40; ++k) {
      const double x = 0.37 * k;
      const double va = a(x);
      worst = std::max(worst, std::abs(va - b(-x)));
      lowest = std::min(lowest, va);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s; min value %.3g", where.c_str(), lowest);
    CheckResult c = bounded("symmetry x,s,z -> -x,-s,-z and positivity", worst, 1e-12, buf);
    c.passed = c.passed && lowest >= -1e-12;
    return c;
  });
  return out;
}

std::vector<Check> model_free_checks() {
  std::vector<Check> out;
  out.push_back([] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double zt = -5.0 + i;
      for (int k = 0; k < 10; ++k) {
        const double x = -6.0 + 1.3 * k;
        const DriveConfig dc = DriveConfig::from_eta2(4.0 + i, zt, 0.3);
        const double a = sigma_inel_x(no_direct_scattering(), dc, x);
        const double b = mollow_inel_x(zt, dc.eta, dc.gammatilde, x);
        worst = std::max(worst, relative_error(a, b));
      }
    }
    return bounded("Mollow closed form vs resolvent", worst, 1e-10);
  });
  out.push_back([] {
    gen::Rng rng(gen::default_seed);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const ScatteringScalars sc = gen::scalars(rng);
      const DriveConfig dc = gen::drive(rng);
      const CrossSectionTriple c = cross_sections(sc, dc);
      worst = std::max(worst, relative_error(c.elastic + c.inelastic, c.total));
    }
    return bounded("sum rule on 200 random parameter sets", worst, 1e-12);
  });
  return out;
}

std::vector<Check> beam_checks(const RunConfig& cfg, const DriveConfig& dc) {
  std::vector<Check> out;
  for (double dth : {0.2, 0.1, 0.05}) {
    out.push_back([table = *cfg.table, dc, dth] {
      const FiniteBeamModel fb = make_finite_beam(std::max(40, table.lmax()), dth);
      const BalanceReport r = finite_beam_balance(fb, table, dc);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s dtheta=%g influx=%.12g outflux=%.12g",
                    drive_label(dc).c_str(), dth, r.influx, r.outflux);
      return bounded("finite-beam photon balance", r.residual, 1e-8, buf);
    });
  }
  return out;
}

}  // namespace

VerifyReport run_verify(const RunConfig& cfg, unsigned threads) {
  const double gammatilde = cfg.gammatilde > 0.0 ? cfg.gammatilde : 0.6;
  std::vector<Check> checks = model_free_checks();
  for (double e2 : cfg.eta2) {
    for (double zt : cfg.ztilde) {
      const DriveConfig dc = DriveConfig::from_eta2(e2, zt, gammatilde);
      for (auto& c : drive_checks(cfg, dc)) checks.push_back(std::move(c));
      if (cfg.table) {
        for (auto& c : beam_checks(cfg, dc)) checks.push_back(std::move(c));
      }
    }
  }

  VerifyReport report;
  report.checks.resize(checks.size());
  parallel_for(checks.size(), threads, [&](std::size_t i) {
    try {
      report.checks[i] = checks[i]();
    } catch (const std::exception& e) {
      report.checks[i] = {"check raised an error", 0.0, 0.0, false, e.what()};
    }
  });
  return report;
}

void write_text(std::ostream& os, const VerifyReport& r) {
  char buf[64];
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "%.3e <= %.1e", c.measured, c.tolerance);
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << buf << "]";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << '\n';
    failed += c.passed ? 0 : 1;
  }
  os << r.checks.size() - failed << "/" << r.checks.size() << " checks passed\n";
}

void write_json(std::ostream& os, const VerifyReport& r) {
  nlohmann::json j;
  j["schema"] = schema_version;
  j["passed"] = r.all_passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed},
                           {"detail", c.detail}});
  }
  os << j.dump(2) << '\n';
}

}  // namespace qsatom
