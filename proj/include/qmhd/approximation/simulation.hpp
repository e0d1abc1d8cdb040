#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmhd/approximation/integrators.hpp"

namespace qmhd {

struct RunSettings {
  /// Diagnostic sample at absolute step indices divisible by `cadence`, and always
  /// at the first and last state.
  int cadence = 1;
  /// Keep every sampled state in RunResult::trajectory.
  bool store_trajectory = false;
  std::function<void(const State&)> on_sample;
  /// Called with the last finite, admissible state before an error propagates.
  std::function<void(const State&)> on_failure;
};

struct RunResult {
  State final;
  std::vector<State> trajectory;
  long steps = 0;
};

/// Number of steps from t to t_end; the last one is shortened to land on t_end.
long steps_to(double t, double t_end, double dt);

/// Advances to options.t_end. Throws BlowUpError on non-finite fields and
/// PositivityError when the density leaves the admissible range.
RunResult run(const Model& model, State initial, const SolverOptions& options, const RunSettings& settings = {});

/// Throws BlowUpError if any field holds NaN or Inf.
void check_finite(const State& state);

// Checkpoint: a snapshot of n, ux, uy, Bx, By followed by
//   8 bytes "QMHDCKPT", u64 step, u32 length + parameter text, u32 count + f64 coefficients.
void save_checkpoint(const std::string& path, const State& state, const std::string& params_text);

struct Checkpoint {
  State state;
  std::string params_text;
};
Checkpoint load_checkpoint(const std::string& path, const GalerkinSpace& space);

}  // namespace qmhd
