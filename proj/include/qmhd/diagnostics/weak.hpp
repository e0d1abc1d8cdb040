#pragma once

// Weak-form residuals of a stored trajectory against a battery of
// space-time test functions psi(x) chi(t) with chi(T) = 0.

#include <cstdint>
#include <string>
#include <vector>

#include "qmhd/diagnostics/series.hpp"

namespace qmhd {

struct WeakResidualReport {
  std::uint64_t seed = 0;
  int battery = 0;
  /// Absolute residual per test function.
  std::vector<double> continuity, momentum, induction;
  /// Same induction residuals with the resistive term written as nu_b grad B : grad psi.
  std::vector<double> induction_grad_form;
  /// Largest contribution of the eps and hyper terms to a momentum residual.
  double regularization_extra = 0.0;
  double max_time_gap = 0.0;
  std::vector<std::string> warnings;

  double max_continuity() const;
  double max_momentum() const;
  double max_induction() const;
  double rms_continuity() const;
  double rms_momentum() const;
  double rms_induction() const;
  /// max |induction - induction_grad_form|.
  double induction_form_gap() const;
  Report report() const;
};

/// Time quadrature treats each field as piecewise linear between samples and
/// integrates it exactly against chi, so a constant state has zero residual.
/// Throws std::invalid_argument for fewer than two states.
WeakResidualReport weak_residuals(const Model& model, const std::vector<State>& trajectory, std::uint64_t seed,
                                  int battery = 20);

}  // namespace qmhd
