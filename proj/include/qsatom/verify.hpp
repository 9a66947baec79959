#pragma once

// The `verify` entry point: oracles and invariants run against the closed forms.

#include <ostream>
#include <string>
#include <vector>

#include "qsatom/config.hpp"

namespace qsatom {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Runs every check for the model in `cfg` at each (eta2, ztilde) point and
/// cfg.gammatilde (0.6 if unset). Phase-shift configs add the finite-beam
/// balance. cfg.fault_injection perturbs the spectrum path on purpose.
VerifyReport run_verify(const RunConfig& cfg, unsigned threads = 1);

void write_text(std::ostream& os, const VerifyReport& r);
void write_json(std::ostream& os, const VerifyReport& r);

}  // namespace qsatom
