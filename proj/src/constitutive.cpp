#include "qmhd/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmhd/errors.hpp"

namespace qmhd {

namespace {

void require_nonnegative(double n, const char* what) {
  if (!(n >= 0.0)) {
    std::ostringstream os;
    os << what << ": density must be non-negative, got " << n;
    throw DomainError(os.str());
  }
}

void require_positive(double n, const char* what) {
  if (!(n > 0.0)) {
    std::ostringstream os;
    os << what << ": singular at n <= 0, got " << n;
    throw SingularityError(os.str());
  }
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

}  // namespace

double ResistivityProfile::lower_bound(double n) const {
  return n < threshold ? d0 * std::pow(n, -a) : d1;
}

double ResistivityProfile::upper_bound(double n) const {
  return n < threshold ? d0p * std::pow(n, -ap) : d1p * std::pow(n, b);
}

void ResistivityProfile::validate() const {
  require(d0 > 0 && d0p > 0 && d1 > 0 && d1p > 0, "resistivity: d0, d0p, d1, d1p must be > 0");
  require(a >= 2.0 && a < 3.0, "resistivity: a must lie in [2, 3)");
  require(ap > a && ap < 3.0, "resistivity: ap must lie in (a, 3)");
  require(b >= 0.0 && std::isfinite(b), "resistivity: b must be finite and >= 0");
  require(threshold > 0.0, "resistivity: threshold must be > 0");
  // The corridor is non-empty on both sides iff it is at the threshold.
  require(d0 <= d0p * std::pow(threshold, a - ap),
          "resistivity: empty small-density corridor (need d0 <= d0p * B^(a - ap))");
  require(d1 <= d1p * std::pow(threshold, b),
          "resistivity: empty large-density corridor (need d1 <= d1p * B^b)");
}

void ConstitutiveParams::validate(bool lower_bound_audit) const {
  require(gamma > 1.0, "gamma must be > 1");
  require(gamma_minus >= 1.0, "gamma_minus must be >= 1");
  require(c1 > 0.0 && c2 > 0.0, "c1 and c2 must be > 0");
  require(mu0 > 0.0, "mu0 must be > 0");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  require(hbar >= 0.0, "hbar must be >= 0");
  if (lower_bound_audit) require(gamma_minus > 4.0, "density lower-bound audit requires gamma_minus > 4");
  resistivity.validate();
}

namespace law {

double pressure(double n, const ConstitutiveParams& p) {
  require_nonnegative(n, "pressure");
  return std::pow(n, p.gamma);
}

double pressure_deriv(double n, const ConstitutiveParams& p) {
  require_nonnegative(n, "pressure_deriv");
  return p.gamma * std::pow(n, p.gamma - 1.0);
}

double cold_pressure_deriv(double n, const ConstitutiveParams& p) {
  require_positive(n, "cold_pressure_deriv");
  if (n <= 1.0) return p.c1 * std::pow(n, -p.gamma_minus - 1.0);
  return p.c2 * std::pow(n, p.gamma - 1.0);
}

double cold_pressure(double n, const ConstitutiveParams& p) {
  require_positive(n, "cold_pressure");
  if (n <= 1.0) return (p.c1 / p.gamma_minus) * (1.0 - std::pow(n, -p.gamma_minus));
  return (p.c2 / p.gamma) * (std::pow(n, p.gamma) - 1.0);
}

double enthalpy(double n, const ConstitutiveParams& p) {
  require_positive(n, "enthalpy");
  return std::pow(n, p.gamma) / (p.gamma - 1.0);
}

double enthalpy_deriv(double n, const ConstitutiveParams& p) {
  require_positive(n, "enthalpy_deriv");
  return p.gamma * std::pow(n, p.gamma - 1.0) / (p.gamma - 1.0);
}

double enthalpy_cold(double n, const ConstitutiveParams& p) {
  require_positive(n, "enthalpy_cold");
  if (n <= 1.0) {
    const double gm = p.gamma_minus;
    return (p.c1 / gm) * (std::pow(n, -gm) / (gm + 1.0) + n * gm / (gm + 1.0) - 1.0);
  }
  const double g = p.gamma;
  return (p.c2 / g) * (std::pow(n, g) / (g - 1.0) - n * g / (g - 1.0) + 1.0);
}

double enthalpy_cold_deriv(double n, const ConstitutiveParams& p) {
  require_positive(n, "enthalpy_cold_deriv");
  if (n <= 1.0) return p.c1 / (p.gamma_minus + 1.0) * (1.0 - std::pow(n, -p.gamma_minus - 1.0));
  return p.c2 / (p.gamma - 1.0) * (std::pow(n, p.gamma - 1.0) - 1.0);
}

double shear_viscosity(double n, const ConstitutiveParams& p) {
  require_nonnegative(n, "shear_viscosity");
  return p.mu0 * std::pow(n, p.alpha);
}

double shear_viscosity_deriv(double n, const ConstitutiveParams& p) {
  if (p.alpha == 1.0) return p.mu0;
  require_positive(n, "shear_viscosity_deriv");
  return p.mu0 * p.alpha * std::pow(n, p.alpha - 1.0);
}

double bulk_viscosity(double n, const ConstitutiveParams& p) {
  require_nonnegative(n, "bulk_viscosity");
  return 2.0 * p.mu0 * (p.alpha - 1.0) * std::pow(n, p.alpha);
}

double dispersion(double n, const ConstitutiveParams& p) {
  require_nonnegative(n, "dispersion");
  return std::pow(n, p.alpha);
}

double dispersion_deriv(double n, const ConstitutiveParams& p) {
  if (p.alpha == 1.0) return 1.0;
  require_positive(n, "dispersion_deriv");
  return p.alpha * std::pow(n, p.alpha - 1.0);
}

double bd_potential_grad_factor(double n, const ConstitutiveParams& p) {
  require_positive(n, "bd_potential_grad_factor");
  return 2.0 * p.mu0 * p.alpha * std::pow(n, p.alpha - 2.0);
}

double bd_potential(double n, const ConstitutiveParams& p) {
  return 2.0 * xi(n, p);
}

double xi(double n, const ConstitutiveParams& p) {
  require_positive(n, "xi");
  if (p.alpha == 1.0) return p.mu0 * std::log(n);
  return p.mu0 * p.alpha * std::pow(n, p.alpha - 1.0) / (p.alpha - 1.0);
}

double resistivity(double n, const ConstitutiveParams& p) {
  require_positive(n, "resistivity");
  const ResistivityProfile& r = p.resistivity;
  if (r.custom) return r.custom(n);
  const double raw = std::max(r.d1, r.d0 * std::pow(n, -r.a));
  return std::clamp(raw, r.lower_bound(n), r.upper_bound(n));
}

}  // namespace law

CorridorCheck check_resistivity_corridor(const ConstitutiveParams& p, int samples, double n_min,
                                         double n_max) {
  CorridorCheck check;
  check.samples = samples;
  check.worst_lower_ratio = INFINITY;
  check.worst_upper_ratio = 0.0;
  const double step = samples > 1 ? std::log(n_max / n_min) / (samples - 1) : 0.0;
  for (int i = 0; i < samples; ++i) {
    const double n = n_min * std::exp(step * i);
    const double nu = law::resistivity(n, p);
    const double lo = p.resistivity.lower_bound(n);
    const double hi = p.resistivity.upper_bound(n);
    check.worst_lower_ratio = std::min(check.worst_lower_ratio, nu / lo);
    check.worst_upper_ratio = std::max(check.worst_upper_ratio, nu / hi);
    if (!(nu >= lo && nu <= hi)) ++check.violations;
  }
  return check;
}

}  // namespace qmhd
