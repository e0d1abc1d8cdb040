#pragma once

#include <vector>

#include "qmhd/diagnostics/series.hpp"

namespace qmhd {

/// A-priori norms of one state (columns prefixed "N_").
NamedValues apriori_norms(const Model& model, const State& state);

/// Residual of dF/dt + D = 0 from a sampled series.
struct BalanceCheck {
  std::vector<double> t;         // midpoints of the interior sample intervals
  std::vector<double> residual;  // signed
  double max_abs = 0.0;
  /// max |D| over the series; residuals are small relative to this.
  double scale = 0.0;
  double spacing = 0.0;
  /// Samples where F grows by more than growth_tol * max(1, |F|).
  std::vector<double> growth_times;
  bool growth() const { return !growth_times.empty(); }
  Report report(const std::string& title) const;
};

/// Residual at the midpoint of each interior interval,
///   r = (F_{k-1} - 27 F_k + 27 F_{k+1} - F_{k+2}) / (24 h) + (-D_{k-1} + 9 D_k + 9 D_{k+1} - D_{k+2}) / 16,
/// i.e. the forward difference [F(t+h) - F(t)] / h plus dissipation at the midpoint,
/// both corrected to fourth order. Needs uniformly spaced samples; a shortened
/// final interval is dropped. Series with fewer than four samples use the
/// two-point form with the trapezoid dissipation.
BalanceCheck balance_residual(const DiagnosticsSeries& series, const std::string& functional,
                              const std::string& dissipation, double growth_tol = 1e-10);

BalanceCheck check_energy_inequality(const DiagnosticsSeries& series, double growth_tol = 1e-10);
BalanceCheck bd_identity_residual(const DiagnosticsSeries& series);

/// log2(coarse.max_abs / fine.max_abs).
double refinement_order(const BalanceCheck& coarse, const BalanceCheck& fine);

/// Count of samples where the Lorentz splitting inequality fails.
Report check_lorentz_split(const DiagnosticsSeries& series);

/// Sup over time of every "N_" column, plus time-L2 norms of the dissipative ones.
Report apriori_bounds_report(const DiagnosticsSeries& series);

}  // namespace qmhd
