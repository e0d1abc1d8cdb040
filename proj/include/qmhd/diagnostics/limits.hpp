#pragma once

#include "qmhd/diagnostics/series.hpp"

namespace qmhd {

struct LimitCaseResult {
  /// alpha = 1: max |F_q - (hbar^2/2) n grad Lap n| / max |F_q|.
  double alpha_one_gap = 0.0;
  /// alpha = 1/2: max |phi' Lap phi - Lap sqrt(n) / (2 sqrt(n))|, relative to the max of the latter.
  double alpha_half_identity_gap = 0.0;
  /// alpha = 1/2: least-squares ratio of F_q to (hbar^2/2) n grad(Lap sqrt(n) / sqrt(n)).
  /// The literal form gives 1/2; the reduced equation as usually written implies 1.
  double alpha_half_ratio = 0.0;
  double alpha_half_ratio_residual = 0.0;
  Report report() const;
};

/// Quantum-term reductions at alpha = 1 and alpha = 1/2 for the density n.
/// Only grid, hbar and the density are used from the arguments.
LimitCaseResult limit_case_check(const ScalarField& n, const ConstitutiveParams& params);

}  // namespace qmhd
