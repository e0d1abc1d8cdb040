#pragma once

// Constitutive laws of the quantum MHD system: pressure, cold pressure,
// density-dependent viscosities, dispersion, resistivity and the auxiliary
// potentials (enthalpies, xi, BD drift potential). All functions are pure.

#include <functional>
#include <string>
#include <vector>

namespace qmhd {

/// Corridor constants of the resistivity law. `threshold` is the density at
/// which the small-density corridor hands over to the large-density one.
struct ResistivityProfile {
  double d0 = 0.01;
  double d0p = 0.02;
  double d1 = 0.01;
  double d1p = 0.02;
  double a = 2.0;
  double ap = 2.5;
  double b = 0.5;
  double threshold = 1.0;

  /// Optional replacement for the default max(d1, d0 n^-a) profile.
  std::function<double(double)> custom;

  double lower_bound(double n) const;
  double upper_bound(double n) const;
  void validate() const;
};

struct ConstitutiveParams {
  double gamma = 2.0;
  double gamma_minus = 5.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double mu0 = 0.01;
  double alpha = 0.5;
  double hbar = 0.0;
  ResistivityProfile resistivity;

  /// Throws ParameterError on a violated invariant. `lower_bound_audit`
  /// additionally demands gamma_minus > 4.
  void validate(bool lower_bound_audit = false) const;
};

namespace law {

double pressure(double n, const ConstitutiveParams& p);
double pressure_deriv(double n, const ConstitutiveParams& p);

double cold_pressure_deriv(double n, const ConstitutiveParams& p);
/// Antiderivative of cold_pressure_deriv normalized by P_c(1) = 0.
double cold_pressure(double n, const ConstitutiveParams& p);

/// H with n H' - H = P, additive multiple of n fixed to zero.
double enthalpy(double n, const ConstitutiveParams& p);
double enthalpy_deriv(double n, const ConstitutiveParams& p);
/// H_c(n) = n * int_1^n P_c(s)/s^2 ds; H_c(1) = H_c'(1) = 0.
double enthalpy_cold(double n, const ConstitutiveParams& p);
double enthalpy_cold_deriv(double n, const ConstitutiveParams& p);

double shear_viscosity(double n, const ConstitutiveParams& p);
double shear_viscosity_deriv(double n, const ConstitutiveParams& p);
/// lambda(n) = 2 (n mu'(n) - mu(n)) = 2 mu0 (alpha - 1) n^alpha. May be negative.
double bulk_viscosity(double n, const ConstitutiveParams& p);

double dispersion(double n, const ConstitutiveParams& p);
double dispersion_deriv(double n, const ConstitutiveParams& p);

/// 2 mu'(n) / n: the scalar with grad phi_BD = factor * grad n.
double bd_potential_grad_factor(double n, const ConstitutiveParams& p);
double bd_potential(double n, const ConstitutiveParams& p);

/// xi with n xi'(n) = mu'(n); 2 xi = phi_BD.
double xi(double n, const ConstitutiveParams& p);

double resistivity(double n, const ConstitutiveParams& p);

}  // namespace law

/// Result of sampling the resistivity law against its corridor.
struct CorridorCheck {
  int samples = 0;
  int violations = 0;
  double worst_lower_ratio = 0.0;  // min over samples of nu / lower
  double worst_upper_ratio = 0.0;  // max over samples of nu / upper
  bool ok() const { return violations == 0; }
};

/// Checks the corridor at `samples` log-spaced densities in [n_min, n_max].
CorridorCheck check_resistivity_corridor(const ConstitutiveParams& p, int samples = 1000,
                                         double n_min = 1e-3, double n_max = 1e3);

}  // namespace qmhd
