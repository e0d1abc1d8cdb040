#pragma once

#include <utility>
#include <vector>

#include "qmhd/approximation/model.hpp"

namespace qmhd {

struct FixedPointRecord {
  int iterations = 0;
  /// Relative increment after each sweep.
  std::vector<double> increments;
  /// increments[k] / increments[k-1]; a contraction keeps these below 1.
  std::vector<double> ratios;
  bool converged = false;
};

struct ImexResult {
  State state;
  FixedPointRecord record;
};

/// Classical fourth-order Runge-Kutta on the coupled system.
State rk4_step(const Model& model, const State& state, double dt, const SolverOptions& options);

/// Implicit-midpoint step solved by fixed-point iteration
///   v <- M^{-1}[n1] (M[n0] u0 + dt N(midpoint)),
/// with the eps Lap n and mean resistive terms Crank-Nicolson in Fourier space.
/// Throws FixedPointDivergenceError after fp_max_iters sweeps.
ImexResult fixed_point_solve(const Model& model, const State& state, double dt, const SolverOptions& options);

State imex_step(const Model& model, const State& state, double dt, const SolverOptions& options);

/// Dispatches on options.integrator.
State step(const Model& model, const State& state, double dt, const SolverOptions& options);

/// Stability-limited time step for the explicit scheme, scaled by `cfl`.
double suggest_dt(const Model& model, const State& state, double cfl = 0.5);

/// Bounds [min n0 e^{-I}, max n0 e^{I}] with I = int_0^t ||div u||_inf.
std::pair<double, double> max_principle_envelope(double n0_min, double n0_max, double div_integral);

/// Envelope curves for a sampled history of ||div u(t_k)||_inf (trapezoid in t).
struct Envelope {
  std::vector<double> t, lower, upper;
};
Envelope max_principle_envelope(double n0_min, double n0_max, const std::vector<double>& times,
                                const std::vector<double>& div_sup);

}  // namespace qmhd
