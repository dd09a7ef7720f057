#pragma once

// Invariant suite run by `phasekit verify` over the built-in parameter grid.

#include <string>
#include <vector>

#include "phasekit/types.hpp"

namespace phasekit {

struct VerificationRow {
  std::string invariant;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Residual must stay below tolerance, or (lower-bound rows) above it.
  bool lower_bound = false;
  int cells = 0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;

  bool all_passed() const;
};

VerificationReport run_verification(const Tolerances& tol = {});

std::string format_report(const VerificationReport& report);

}  // namespace phasekit
