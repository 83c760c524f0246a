#pragma once

#include <string>
#include <vector>

namespace cca {

/// Outcome of one cross-module consistency check.
struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationOptions {
  /// When > 0, replaces every check's pass threshold; used for informational
  /// tolerance sweeps.
  double tolerance_override = 0.0;

  /// Feeds the single-excitation check amplitudes built from the couplings
  /// in the wrong bond order. The check must then fail on an asymmetric
  /// array; this guards the ordering convention against silent regressions.
  bool corrupt_coupling_order = false;
};

/// Runs every cross-check with fixed seeds. Deterministic.
std::vector<CheckResult> run_verification(const VerificationOptions& options = {});

}  // namespace cca
