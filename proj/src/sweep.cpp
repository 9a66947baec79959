#include "qsatom/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <json.hpp>

#include "qsatom/spectrum.hpp"
#include "qsatom/xsection.hpp"

namespace qsatom {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

void check_finite(const std::vector<double>& row) {
  for (double v : row) {
    if (!std::isfinite(v)) throw NumericalError("non-finite value in output row");
  }
}

// Numerical exceptions from the library surface as NumericalError.
template <class F>
void guarded(F&& f) {
  try {
    f();
  } catch (const NumericalError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError(e.what());
  }
}

}  // namespace

Table run_xsection_sweep(const RunConfig& cfg, unsigned threads) {
  if (cfg.eta2.empty() || cfg.ztilde.empty()) throw ConfigError("sweep: empty eta2 or ztilde list");
  Table t;
  t.columns = {"eta2", "ztilde", "sigma_tot", "sigma_el", "sigma_inel"};
  const std::size_t nz = cfg.ztilde.size();
  t.rows.resize(cfg.eta2.size() * nz);
  guarded([&] {
    parallel_for(t.rows.size(), threads, [&](std::size_t i) {
      const double e2 = cfg.eta2[i / nz];
      const double zt = cfg.ztilde[i % nz];
      const CrossSectionTriple c = cross_sections(cfg.scalars, DriveConfig::from_eta2(e2, zt));
      t.rows[i] = {e2, zt, c.total, c.elastic, c.inelastic};
      check_finite(t.rows[i]);
    });
  });
  return t;
}

Table run_spectrum_sweep(const RunConfig& cfg, unsigned threads) {
  if (cfg.eta2.empty() || cfg.ztilde.empty()) throw ConfigError("sweep: empty eta2 or ztilde list");
  if (!(cfg.gammatilde > 0.0)) {
    throw ConfigError("spectrum: gammatilde must be > 0 (the elastic line is a delta at 0)");
  }
  if (cfg.x_grid.empty()) throw ConfigError("spectrum: x_grid is required");

  Table t;
  t.columns = {"eta2", "ztilde", "x", "Sigma_tot", "Sigma_inel", "Sigma_el_lorentzian"};
  if (cfg.mollow_reference) {
    t.columns.push_back("Mollow_tot");
    t.columns.push_back("Mollow_inel");
  }
  const std::size_t nz = cfg.ztilde.size();
  const std::size_t nx = cfg.x_grid.size();
  t.rows.resize(cfg.eta2.size() * nz * nx);

  // One work item per (eta2, ztilde) curve; the spectrum object is reused along x.
  guarded([&] {
    parallel_for(cfg.eta2.size() * nz, threads, [&](std::size_t c) {
      const double e2 = cfg.eta2[c / nz];
      const double zt = cfg.ztilde[c % nz];
      const DriveConfig dc = DriveConfig::from_eta2(e2, zt, cfg.gammatilde);
      const InelasticSpectrum inel(cfg.scalars, dc);
      const double weight = sigma_el(cfg.scalars, dc);
      for (std::size_t k = 0; k < nx; ++k) {
        const double x = cfg.x_grid[k];
        const double si = inel(x);
        const double se = elastic_lorentzian(weight, cfg.gammatilde, x);
        std::vector<double> row{e2, zt, x, se + si, si, se};
        if (cfg.mollow_reference) {
          row.push_back(mollow_tot_x(zt, dc.eta, cfg.gammatilde, x));
          row.push_back(mollow_inel_x(zt, dc.eta, cfg.gammatilde, x));
        }
        check_finite(row);
        t.rows[c * nx + k] = std::move(row);
      }
    });
  });
  return t;
}

void write_csv(std::ostream& os, const Table& t) {
  os << "# " << schema_version << ", reduced units (alpha2=1), columns: ";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  char buf[32];
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.16e", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::json j;
  j["schema"] = schema_version;
  j["units"] = "reduced units (alpha2=1)";
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  os << j.dump() << '\n';
}

}  // namespace qsatom
