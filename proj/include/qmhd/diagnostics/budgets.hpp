#pragma once

// Energy and BD-entropy budgets of a single state. Every line is a collocation
// quadrature; dissipation lines enter the balance as dF/dt + dissipation() = 0.

#include <string>
#include <utility>
#include <vector>

#include "qmhd/approximation/model.hpp"

namespace qmhd {

using NamedValues = std::vector<std::pair<std::string, double>>;

struct EnergyBudget {
  double kinetic = 0.0;
  double internal = 0.0;
  double cold = 0.0;
  double quantum = 0.0;   // (hbar^2/4) int |grad phi(n)|^2
  double magnetic = 0.0;
  double hyper = 0.0;     // (lambda/2) int |grad^(2s+1) n|^2
  double total = 0.0;

  double visc_shear = 0.0;      // 2 int mu |D(u)|^2
  double visc_bulk = 0.0;       // int lambda(n) (div u)^2, signed
  double eps_pressure = 0.0;    // -eps int (H' + H_c') Lap n = eps int (P' + P_c')/n |grad n|^2
  double resistive = 0.0;       // int nu_b |curl B|^2
  double hyper_momentum = 0.0;  // lambda int |Lap^s grad(n u)|^2
  double hyper_density = 0.0;   // lambda eps int |Lap^(s+1) n|^2
  double eps_quantum = 0.0;     // eps (hbar^2/2) int phi' Lap phi Lap n, signed

  double dissipation() const;
  NamedValues lines() const;
};

/// Throws SingularityError when n has a non-positive sample.
EnergyBudget total_energy(const Model& model, const State& state);

struct BDBudget {
  double functional = 0.0;  // energy functional with kinetic part 1/2 int n |u + grad phi_BD|^2

  // left-hand (dissipative) lines
  double shear_antisym = 0.0;    // 2 int mu |A(u)|^2
  double quantum = 0.0;          // hbar^2 int phi' Lap phi Lap mu
  double resistive = 0.0;        // int nu_b |curl B|^2
  double pressure_drift = 0.0;   // -<pressure force, w>; 2 int mu' (P' + P_c') |grad n|^2 / n
  double hyper_momentum = 0.0;   // as in the energy budget
  double hyper_density = 0.0;
  double eps_pressure = 0.0;
  double eps_quantum = 0.0;

  // right-hand (production) lines
  double lorentz_drift = 0.0;    // int (curl B) x B . grad phi_BD
  double hyper_drift = 0.0;      // int F_hyper . grad phi_BD
  double eps_mass = 0.0;         // -eps int div(n u) phi_BD' Lap n
  double eps_drift_sq = 0.0;     // eps/2 int |grad phi_BD|^2 Lap n
  double eps_convect = 0.0;      // int F_eps . grad phi_BD, F_eps = -eps (grad n . grad) u in skew form
  double eps_potential = 0.0;    // eps int n grad phi_BD . grad(phi_BD' Lap n)

  /// lambda int mu' Lap mu Lap^s mu; reported only, not part of the balance.
  double hyper_alternative = 0.0;

  double left() const;
  double right() const;
  /// Balance form dF/dt + dissipation() = 0.
  double dissipation() const { return left() - right(); }
  NamedValues lines() const;
};

BDBudget bd_budget(const Model& model, const State& state);

/// Both sides of the Young splitting of the Lorentz-drift term:
///   |2 int j (grad mu x B) / n| <= int j^2 / (w n^2) + w int (grad mu x B)^2.
struct LorentzSplit {
  double lhs = 0.0;
  double rhs = 0.0;
  double weight = 0.0;
  bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-300; }
};

/// `weight` <= 0 selects eps, or 1 when eps = 0.
LorentzSplit lorentz_split(const Model& model, const State& state, double weight = 0.0);

}  // namespace qmhd
