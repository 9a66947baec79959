#pragma once

// JSON run configuration for the command-line driver.
//
// {
//   "scalars": {"delta0_plus": -0.03, "delta0_minus": 0.13, "norm2_pg_plus": 0.005,
//               "norm2_pg_minus": 0.005, "norm2_pdg": 0.02, "eps_r": -0.001},
//   "eta2": [10, 18, 28, 40],
//   "ztilde": [-20, 20] or {"min": -20, "max": 20, "n": 401},
//   "gammatilde": 0.6,
//   "x_grid": {"min": -15, "max": 15, "n": 601},
//   "mollow_reference": true
// }
//
// "phase_shifts": {"delta_plus": [...], "delta_minus": [...]} replaces "scalars".

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsatom/model.hpp"

namespace qsatom {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelMode { scalars, phase_shifts };

struct RunConfig {
  ModelMode mode = ModelMode::scalars;
  ScatteringScalars scalars;             // always filled; derived in phase-shift mode
  std::optional<PhaseShiftTable> table;  // phase-shift mode only
  std::vector<double> eta2;
  std::vector<double> ztilde;
  std::vector<double> x_grid;  // may be empty unless a spectrum is requested
  double gammatilde = 0.0;
  bool mollow_reference = false;
  std::string fault_injection;  // verify only; empty means none
};

/// Throws ConfigError on any schema or value problem.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Reference scalars at eta2 = 28, ztilde = 3, gammatilde = 0.6.
RunConfig default_verify_config();

/// Fault accepted by RunConfig::fault_injection: flips the sign of the
/// (eta^2/2) sin 2s term inside b' (and hence in y) on the spectrum path.
inline constexpr const char* fault_bprime_sign = "bprime_sign";

}  // namespace qsatom
