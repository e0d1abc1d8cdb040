#include <doctest.h>

#include <cmath>

#include "qmhd/constitutive.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;
using doctest::Approx;

namespace {

std::vector<double> log_samples(int count, double lo, double hi) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
  return out;
}

}  // namespace

TEST_CASE("pressure") {
  ConstitutiveParams p;
  CHECK(law::pressure(1.0, p) == 1.0);
  CHECK(law::pressure(2.0, p) == Approx(4.0));
  p.gamma = 1.5;
  CHECK(law::pressure(0.0, p) == 0.0);
  CHECK_THROWS_AS(law::pressure(-1.0, p), DomainError);
}

TEST_CASE("cold pressure derivative branches") {
  ConstitutiveParams p;
  CHECK(law::cold_pressure_deriv(1.0, p) == Approx(1.0));
  CHECK(law::cold_pressure_deriv(std::nextafter(1.0, 2.0), p) == Approx(1.0));
  CHECK(law::cold_pressure_deriv(0.5, p) == Approx(64.0));
  p.c2 = 3.0;
  CHECK(law::cold_pressure_deriv(2.0, p) == Approx(6.0));
  CHECK_THROWS_AS(law::cold_pressure_deriv(0.0, p), SingularityError);
  CHECK_THROWS_AS(law::cold_pressure_deriv(-0.1, p), DomainError);
}

TEST_CASE("cold pressure is the normalized antiderivative") {
  ConstitutiveParams p;
  p.c2 = 2.0;
  CHECK(law::cold_pressure(1.0, p) == 0.0);
  CHECK(law::cold_pressure(2.0, p) == Approx(3.0));
  auto dp = [&](double s) { return law::cold_pressure_deriv(s, p); };
  for (double n : {0.2, 0.5, 0.9, 1.5, 2.0, 7.0}) {
    // start just past the branch point so the quadrature samples one branch
    const double quad = oracle::simpson(dp, std::nextafter(1.0, n), n, 4000);
    CHECK(law::cold_pressure(n, p) == Approx(quad).epsilon(1e-9));
  }
  // continuity at the branch point and monotonicity
  CHECK(law::cold_pressure(1.0 - 1e-12, p) == Approx(law::cold_pressure(1.0 + 1e-12, p)).epsilon(1e-9));
  double prev = -INFINITY;
  for (double n : log_samples(500, 1e-3, 1e3)) {
    const double v = law::cold_pressure(n, p);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("enthalpy identities") {
  ConstitutiveParams p;
  CHECK(law::enthalpy(1.0, p) == Approx(1.0));
  CHECK(law::enthalpy_cold(1.0, p) == 0.0);
  for (double g : {1.4, 2.0, 3.0}) {
    p.gamma = g;
    for (double n : log_samples(60, 0.1, 10.0)) {
      auto h = [&](double s) { return law::enthalpy(s, p); };
      const double lhs = n * oracle::derivative(h, n) - h(n);
      CHECK(std::fabs(lhs - law::pressure(n, p)) <= 1e-6 * law::pressure(n, p));
    }
  }
  p = ConstitutiveParams{};
  p.c1 = 0.7;
  p.c2 = 1.3;
  auto hc = [&](double s) { return law::enthalpy_cold(s, p); };
  for (double n : log_samples(200, 1e-3, 1e3)) {
    const double pc = law::cold_pressure(n, p);
    const double lhs = n * oracle::derivative(hc, n) - hc(n);
    CHECK(std::fabs(lhs - pc) <= 1e-6 * (1.0 + std::fabs(pc)));
    CHECK(law::enthalpy_cold_deriv(n, p) == Approx(oracle::derivative(hc, n)).epsilon(1e-7));
  }
}

TEST_CASE("second-derivative identities n H'' = P' and n H_c'' = P_c'") {
  ConstitutiveParams p;
  for (double n : log_samples(120, 1e-3, 1e3)) {
    auto hd = [&](double s) { return law::enthalpy_deriv(s, p); };
    auto hcd = [&](double s) { return law::enthalpy_cold_deriv(s, p); };
    if (std::fabs(n - 1.0) < 0.02) continue;  // derivative kink of the cold branch
    CHECK(n * oracle::derivative(hd, n) == Approx(law::pressure_deriv(n, p)).epsilon(1e-6));
    CHECK(n * oracle::derivative(hcd, n) == Approx(law::cold_pressure_deriv(n, p)).epsilon(1e-6));
  }
}

TEST_CASE("viscosities") {
  ConstitutiveParams p;
  p.mu0 = 1.0;
  p.alpha = 0.5;
  CHECK(law::shear_viscosity(4.0, p) == Approx(2.0));
  CHECK(law::bulk_viscosity(4.0, p) == Approx(-2.0));
  CHECK(law::shear_viscosity(0.0, p) == 0.0);
  CHECK(law::bulk_viscosity(0.0, p) == 0.0);
  p.alpha = 1.0;
  for (double n : {0.1, 1.0, 30.0}) CHECK(law::bulk_viscosity(n, p) == 0.0);
  for (double a : {0.3, 0.5, 0.8, 1.0}) {
    p.alpha = a;
    p.mu0 = 0.01;
    for (double n : log_samples(50, 1e-3, 1e3)) {
      auto mu = [&](double s) { return law::shear_viscosity(s, p); };
      const double ref = 2.0 * (n * oracle::derivative(mu, n) - mu(n));
      CHECK(std::fabs(law::bulk_viscosity(n, p) - ref) <= 1e-10);
    }
  }
}

TEST_CASE("dispersion") {
  ConstitutiveParams p;
  p.alpha = 0.5;
  CHECK(law::dispersion(4.0, p) == Approx(2.0));
  CHECK(law::dispersion_deriv(4.0, p) == Approx(0.25));
  CHECK(law::dispersion_deriv(1.0, p) == Approx(0.5));
  p.alpha = 1.0;
  CHECK(law::dispersion(3.0, p) == 3.0);
  CHECK(law::dispersion_deriv(3.0, p) == 1.0);
}

TEST_CASE("BD potential and xi") {
  ConstitutiveParams p;
  p.mu0 = 1.0;
  p.alpha = 1.0;
  CHECK(law::bd_potential_grad_factor(2.0, p) == Approx(1.0));
  CHECK(law::bd_potential(2.0, p) == Approx(2.0 * std::log(2.0)));
  CHECK(law::xi(std::exp(1.0), p) == Approx(1.0));
  auto factor = [&](double s) { return law::bd_potential_grad_factor(s, p); };
  CHECK(law::bd_potential(2.0, p) - law::bd_potential(1.0, p) == Approx(oracle::simpson(factor, 1.0, 2.0)));

  p.alpha = 0.5;
  CHECK(law::bd_potential_grad_factor(1.0, p) == Approx(1.0));
  CHECK(law::xi(1.0, p) == Approx(p.mu0 * p.alpha / (p.alpha - 1.0)));
  CHECK_THROWS_AS(law::xi(0.0, p), SingularityError);

  for (double a : {0.25, 0.5, 1.0}) {
    p.alpha = a;
    const double c0 = 2.0 * law::xi(1.0, p) - law::bd_potential(1.0, p);
    for (double n : log_samples(40, 1e-2, 1e2)) {
      auto xi = [&](double s) { return law::xi(s, p); };
      auto mu = [&](double s) { return law::shear_viscosity(s, p); };
      CHECK(std::fabs(n * oracle::derivative(xi, n) - oracle::derivative(mu, n)) <= 1e-8);
      CHECK(2.0 * law::xi(n, p) - law::bd_potential(n, p) == Approx(c0));
    }
  }
}

TEST_CASE("resistivity corridor") {
  ConstitutiveParams p;
  CHECK(law::resistivity(1e3, p) == Approx(p.resistivity.d1));
  // small density: n^-a growth
  CHECK(law::resistivity(1e-3, p) * std::pow(1e-3, p.resistivity.a) == Approx(p.resistivity.d0));
  const CorridorCheck c = check_resistivity_corridor(p);
  CHECK(c.samples == 1000);
  CHECK(c.ok());
  CHECK_THROWS_AS(law::resistivity(0.0, p), SingularityError);

  p.resistivity.custom = [](double n) { return 0.05 / n; };
  CHECK(law::resistivity(2.0, p) == Approx(0.025));
  CHECK_FALSE(check_resistivity_corridor(p).ok());
}

TEST_CASE("parameter validation") {
  ConstitutiveParams p;
  CHECK_NOTHROW(p.validate());
  CHECK_NOTHROW(p.validate(true));
  p.gamma = 1.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = ConstitutiveParams{};
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = ConstitutiveParams{};
  p.gamma_minus = 3.0;
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(p.validate(true), ParameterError);
  p = ConstitutiveParams{};
  p.resistivity.ap = 1.5;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = ConstitutiveParams{};
  p.hbar = -1.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
}
