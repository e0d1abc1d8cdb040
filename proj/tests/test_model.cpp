#include <doctest.h>

#include <cmath>
#include <random>

#include "qmhd/approximation/model.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

Coefficients random_coeffs(std::mt19937_64& rng, std::size_t n, double amp = 1.0) {
  Coefficients c(n);
  for (double& v : c) v = amp * (2.0 * oracle::uniform01(rng) - 1.0);
  return c;
}

struct Fixture {
  Grid grid{32, 32};
  ConstitutiveParams cp;
  RegularizationParams reg;
  Fixture() {
    cp.hbar = 0.1;
    reg.n_modes = 30;
  }
  Model model() const { return Model(grid, cp, reg); }
};

}  // namespace

TEST_CASE("constant state has no forcing") {
  Fixture fx;
  fx.reg.epsilon = 1e-2;
  fx.reg.lambda_reg = 1e-6;
  const Model m = fx.model();
  const ScalarField n(fx.grid, 1.7);
  const VectorField u(fx.grid);
  const VectorField b(fx.grid, 0.4, -0.2);
  CHECK(max_abs(m.momentum_operator(u, u, n, b)) <= 1e-14);
  CHECK(max_abs(m.continuity_rhs(n, u).values()) <= 1e-14);
  const VectorField ib = m.induction_rhs(n, u, b);
  CHECK(max_abs(ib.x.values()) <= 1e-14);
  CHECK(max_abs(ib.y.values()) <= 1e-14);
}

TEST_CASE("B-only state reduces to the projected Lorentz force") {
  Fixture fx;
  const Model m = fx.model();
  std::mt19937_64 rng(21);
  const Spectral& sp = m.spectral();
  const VectorField b = sp.curl_scalar(oracle::random_trig(fx.grid, rng, 5, 0.3));
  const VectorField u(fx.grid);
  const Coefficients lhs = m.momentum_operator(u, u, ScalarField(fx.grid, 1.0), b);
  const Coefficients rhs = m.galerkin().project(sp.lorentz(b));
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::fabs(lhs[i] - rhs[i]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("quantum force matches its weak form") {
  Fixture fx;
  std::mt19937_64 rng(22);
  for (double alpha : {1.0, 0.5}) {
    fx.cp.alpha = alpha;
    const Model m = fx.model();
    const Spectral& sp = m.spectral();
    const ScalarField n = sp.dealias(oracle::random_density(fx.grid, rng, 3, 0.3));
    const VectorField zero(fx.grid);
    const MomentumForces f = m.momentum_forces(zero, zero, n, zero);
    const MaterialFields mat = m.materials(n);
    const ScalarField q = sp.product(mat.phi_deriv, sp.laplacian(mat.phi));
    const double c = 0.5 * fx.cp.hbar * fx.cp.hbar;
    // -(hbar^2/2) int q (grad n . psi + n div psi) for each basis function psi
    const GalerkinSpace& gs = m.galerkin();
    double worst = 0.0;
    const Coefficients proj = gs.project(f.quantum);
    for (std::size_t j = 0; j < gs.dofs(); ++j) {
      Coefficients ej(gs.dofs(), 0.0);
      ej[j] = 1.0;
      const VectorField psi = gs.synthesize(ej);
      const ScalarField gn_psi = pointwise(sp.grad(n).x, psi.x) + pointwise(sp.grad(n).y, psi.y);
      const double weak = -c * sp.integral(pointwise(q, gn_psi + pointwise(n, sp.div(psi))));
      worst = std::max(worst, std::fabs(weak - proj[j]));
    }
    CHECK(worst <= 1e-10);
    if (alpha == 1.0) {
      const VectorField direct = c * sp.product(n, sp.grad(sp.laplacian(n)));
      const Coefficients pd = gs.project(direct);
      double d = 0.0;
      for (std::size_t j = 0; j < pd.size(); ++j) d = std::max(d, std::fabs(pd[j] - proj[j]));
      CHECK(d <= 1e-10);
    }
  }
}

TEST_CASE("mass operator contract") {
  Fixture fx;
  const Model m = fx.model();
  const GalerkinSpace& gs = m.galerkin();
  std::mt19937_64 rng(23);
  const Coefficients v = random_coeffs(rng, gs.dofs());
  const Coefficients w = random_coeffs(rng, gs.dofs());

  const Coefficients id = m.mass_apply(ScalarField(fx.grid, 1.0), v);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(id[i] == doctest::Approx(v[i]).epsilon(1e-13));

  const ScalarField n = oracle::random_density(fx.grid, rng, 4, 0.5);
  const double sym = dot(m.mass_apply(n, v), w) - dot(m.mass_apply(n, w), v);
  CHECK(std::fabs(sym) <= 1e-12);
  CHECK(dot(m.mass_apply(n, v), v) >= n.min() * dot(v, v) - 1e-10);

  const MassSolveResult two = m.mass_solve(ScalarField(fx.grid, 2.0), v, 1e-12, 50, 1e-3);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(two.v[i] == doctest::Approx(0.5 * v[i]).epsilon(1e-12));

  const MassSolveResult r = m.mass_solve(n, v, 1e-10, 500, 1e-3);
  const Coefficients back = m.mass_apply(n, r.v);
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) err += (back[i] - v[i]) * (back[i] - v[i]);
  CHECK(std::sqrt(err) <= 1e-10 * norm(v));
  CHECK(r.relative_residual <= 1e-10);

  CHECK_THROWS_AS(m.mass_solve(n, v, 1e-10, 500, 0.9), PositivityError);
  CHECK_THROWS_AS(m.mass_solve(n, v, 1e-14, 1, 1e-3), IterationLimitError);
  const MassSolveResult zero = m.mass_solve(n, Coefficients(gs.dofs(), 0.0), 1e-10, 10, 1e-3);
  CHECK(zero.iterations == 0);
  CHECK(max_abs(zero.v) == 0.0);
}

TEST_CASE("continuity right-hand side") {
  Fixture fx;
  fx.reg.epsilon = 0.05;
  const Model m = fx.model();
  std::mt19937_64 rng(24);
  const ScalarField n = oracle::random_density(fx.grid, rng, 4);
  const VectorField zero(fx.grid);
  const ScalarField r = m.continuity_rhs(n, zero);
  const ScalarField expect = 0.05 * m.spectral().laplacian(n);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  CHECK(std::fabs(m.spectral().integral(r)) <= 1e-12);
  const VectorField u = oracle::random_trig_vector(fx.grid, rng, 4);
  CHECK(std::fabs(m.spectral().integral(m.continuity_rhs(n, u))) <= 1e-12);
}

TEST_CASE("induction right-hand side") {
  Fixture fx;
  fx.cp.resistivity.custom = [](double) { return 0.05; };
  const Model m = fx.model();
  const Spectral& sp = m.spectral();
  std::mt19937_64 rng(25);
  const ScalarField n = oracle::random_density(fx.grid, rng, 4);
  const VectorField u = oracle::random_trig_vector(fx.grid, rng, 4);
  const VectorField b = sp.curl_scalar(oracle::random_trig(fx.grid, rng, 4, 0.3));
  const VectorField r = m.induction_rhs(n, u, b);
  CHECK(max_abs(sp.div(r).values()) <= 1e-12);
  const VectorField zero(fx.grid);
  CHECK(max_abs(m.induction_rhs(n, u, zero).x.values()) == 0.0);

  // u = 0, constant resistivity: nu Lap B
  const VectorField rb = m.induction_rhs(n, zero, b);
  const VectorField lap{sp.laplacian(b.x), sp.laplacian(b.y)};
  double worst = 0.0;
  for (std::size_t i = 0; i < rb.x.size(); ++i)
    worst = std::max({worst, std::fabs(rb.x[i] - 0.05 * lap.x[i]), std::fabs(rb.y[i] - 0.05 * lap.y[i])});
  CHECK(worst <= 1e-12);
}

TEST_CASE("frozen velocity right-hand side") {
  Fixture fx;
  const Model m = fx.model();
  std::mt19937_64 rng(26);
  State s;
  s.n = oracle::random_density(fx.grid, rng, 3);
  s.u = GalerkinVelocity(m.galerkin(), random_coeffs(rng, m.galerkin().dofs(), 0.1));
  s.b = VectorField(fx.grid);
  SolverOptions opts;
  opts.frozen_velocity = true;
  const StateDerivative d = m.rhs(s, opts);
  CHECK(max_abs(d.u) == 0.0);
  opts.frozen_velocity = false;
  CHECK(max_abs(m.rhs(s, opts).u) > 0.0);
  opts.density_floor = 5.0;
  CHECK_THROWS_AS(m.rhs(s, opts), PositivityError);
}
