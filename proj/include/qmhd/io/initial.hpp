#pragma once

#include "qmhd/diagnostics/series.hpp"
#include "qmhd/io/config.hpp"

namespace qmhd {

struct InitialCondition {
  State state;
  /// Finite-energy functionals of the data ("ic_*" keys) and the "finite" check.
  Report audit;
};

/// Builds n0, u0 (projected onto X_N) and a divergence-free B0 = mean + curl(A).
/// Random modes are drawn wavenumber by wavenumber, so one seed gives the same
/// trigonometric polynomial on every grid that resolves it. Throws ConfigError
/// when the density drops below `density_floor` or a functional is not finite.
InitialCondition generate_ic(const ICSpec& spec, const Model& model, double density_floor);

/// Finite-energy functionals of a state: energy, mass, density extrema,
/// int n|u|^2, int H, int H_c, int |grad mu(n)|^2 / n, int |grad phi(n)|^2,
/// int |B|^2 and ||div B||_2.
Report finite_energy_audit(const Model& model, const State& state);

}  // namespace qmhd
