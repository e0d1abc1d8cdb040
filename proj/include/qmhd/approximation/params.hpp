#pragma once

#include <string>

#include "qmhd/spectral/galerkin.hpp"

namespace qmhd {

/// Knobs of the three-level approximation. `lambda_reg` is the
/// hyper-regularization weight, not the bulk viscosity.
struct RegularizationParams {
  double epsilon = 0.0;
  double lambda_reg = 0.0;
  int s = 1;
  int n_modes = 64;

  void validate() const;
};

enum class Integrator { rk4, imex };

Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator integrator);

struct SolverOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  Integrator integrator = Integrator::rk4;
  /// Relative tolerance of the implicit velocity fixed point.
  double fp_tol = 1e-12;
  int fp_max_iters = 50;
  /// Minimum admissible density for mass-operator solves.
  double density_floor = 1e-3;
  /// Relative residual target of the conjugate-gradient mass solve.
  double mass_tol = 1e-13;
  int mass_max_iters = 500;
  /// Keep u fixed in time (transport-only runs).
  bool frozen_velocity = false;

  void validate() const;
};

/// Unknowns of the approximate system at time t.
struct State {
  double t = 0.0;
  long step = 0;
  ScalarField n;
  GalerkinVelocity u;
  VectorField b;
};

}  // namespace qmhd
