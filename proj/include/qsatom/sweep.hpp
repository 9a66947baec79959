#pragma once

// Parameter sweeps producing plot-ready tables.

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsatom/config.hpp"

namespace qsatom {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Rows (eta2, ztilde, sigma_tot, sigma_el, sigma_inel), ordered by eta2 then ztilde.
Table run_xsection_sweep(const RunConfig& cfg, unsigned threads = 1);

/// Rows (eta2, ztilde, x, Sigma_tot, Sigma_inel, Sigma_el_lorentzian), plus
/// Mollow_tot and Mollow_inel when mollow_reference is set. Ordered by eta2,
/// ztilde, x. Throws ConfigError if gammatilde is 0 or x_grid is missing.
Table run_spectrum_sweep(const RunConfig& cfg, unsigned threads = 1);

/// Runs body(0..n-1) on up to `threads` workers. The first exception by
/// index is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

inline constexpr const char* schema_version = "qsatom v1";

/// Comment header, a names row, then %.16e values.
void write_csv(std::ostream& os, const Table& t);
/// {"schema", "units", "columns", "rows"} with shortest round-trip numbers.
void write_json(std::ostream& os, const Table& t);

}  // namespace qsatom
