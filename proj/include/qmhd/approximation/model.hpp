#pragma once

// Semi-discrete operators of the Faedo-Galerkin system:
//   n_t = -div(n u) + eps Lap n
//   B_t = curl(u x B) - curl(nu_b(n) curl B)
//   d/dt (M[n] u) = N[u, u, n, B]        (tested against X_N)
// Momentum contributions are assembled as a collocation force field f with
// N(psi) = int f . psi, then projected onto X_N.

#include <optional>
#include <span>

#include "qmhd/approximation/params.hpp"
#include "qmhd/constitutive.hpp"

namespace qmhd {

/// Constitutive coefficient fields evaluated point-wise at a density and dealiased;
/// phi_deriv is left point-wise and only enters through dealiased products.
struct MaterialFields {
  ScalarField pressure;        // P + P_c
  ScalarField pressure_deriv;  // P' + P_c'
  ScalarField enthalpy_deriv;  // H' + H_c', with n grad(H' + H_c') = grad(P + P_c)
  ScalarField mu;
  ScalarField lambda_visc;
  ScalarField nu_b;
  ScalarField phi;        // dispersion n^alpha
  ScalarField phi_deriv;  // alpha n^(alpha-1)
};

/// Momentum force split by physical origin.
struct MomentumForces {
  VectorField convection;
  VectorField pressure;
  VectorField quantum;
  VectorField hyper;
  VectorField viscous;
  VectorField epsilon;
  VectorField lorentz;

  VectorField total() const;
};

struct MassSolveResult {
  Coefficients v;
  int iterations = 0;
  double relative_residual = 0.0;
};

struct StateDerivative {
  ScalarField n;
  Coefficients u;
  VectorField b;
};

class Model {
 public:
  Model(const Grid& grid, const ConstitutiveParams& constitutive, const RegularizationParams& reg);

  const Grid& grid() const { return spectral_.grid(); }
  const Spectral& spectral() const { return spectral_; }
  const GalerkinSpace& galerkin() const { return galerkin_; }
  const ConstitutiveParams& constitutive() const { return constitutive_; }
  const RegularizationParams& regularization() const { return reg_; }

  MaterialFields materials(const ScalarField& n) const;

  /// -div(n u) + eps Lap n, dealiased.
  ScalarField continuity_rhs(const ScalarField& n, const VectorField& u) const;
  /// curl(e) with e = (u x B)_z - nu_b(n) curl2(B); divergence-free by construction.
  VectorField induction_rhs(const ScalarField& n, const VectorField& u, const VectorField& b) const;

  /// Dual coefficients <M[n] v, e_j> = int n v . e_j.
  Coefficients mass_apply(const ScalarField& n, std::span<const double> v) const;
  /// Preconditioned conjugate gradients on M[n] v = rhs. Throws PositivityError
  /// below `density_floor` and IterationLimitError on non-convergence.
  MassSolveResult mass_solve(const ScalarField& n, std::span<const double> rhs, double tol, int max_iters,
                             double density_floor) const;

  /// Strong-form forces; u_adv transports, u_n carries the viscous and hyper terms.
  MomentumForces momentum_forces(const VectorField& u_adv, const VectorField& u_n, const ScalarField& n,
                                 const VectorField& b) const;
  MomentumForces momentum_forces(const VectorField& u_adv, const VectorField& u_n, const ScalarField& n,
                                 const VectorField& b, const MaterialFields& mat) const;
  /// -eps (grad n . grad) u in skew form, dealiased; its pairing with u is
  /// eps/2 int Lap n |u|^2 on the grid.
  VectorField epsilon_force(const ScalarField& n, const VectorField& u) const;
  /// Dual coefficients <N[u_adv, u_n, n, B], e_j>.
  Coefficients momentum_operator(const VectorField& u_adv, const VectorField& u_n, const ScalarField& n,
                                 const VectorField& b) const;

  /// Time derivative of the coupled system (velocity via a mass solve).
  StateDerivative rhs(const State& state, const SolverOptions& options) const;

 private:
  Spectral spectral_;
  GalerkinSpace galerkin_;
  ConstitutiveParams constitutive_;
  RegularizationParams reg_;
};

}  // namespace qmhd
