#include <doctest.h>

#include <cmath>
#include <random>

#include <sstream>

#include "qmhd/approximation/simulation.hpp"
#include "qmhd/diagnostics/audits.hpp"
#include "qmhd/diagnostics/budgets.hpp"
#include "qmhd/diagnostics/limits.hpp"
#include "qmhd/diagnostics/weak.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;

namespace {

struct Fixture {
  Grid grid{32, 32};
  ConstitutiveParams cp;
  RegularizationParams reg;
  SolverOptions opts;
  Fixture() {
    cp.hbar = 0.1;
    cp.mu0 = 0.05;
    reg.n_modes = 179;  // the whole dealiased ball
  }
  Model model() const { return Model(grid, cp, reg); }
};

State smooth_state(const Model& m, std::uint64_t seed, double b_amp = 0.2) {
  std::mt19937_64 rng(seed);
  const Spectral& sp = m.spectral();
  State s;
  s.n = sp.dealias(oracle::random_density(m.grid(), rng, 2, 0.2));
  s.u = GalerkinVelocity::from_field(m.galerkin(), oracle::random_trig_vector(m.grid(), rng, 2, 0.3));
  s.b = sp.curl_scalar(oracle::random_trig(m.grid(), rng, 2, b_amp));
  return s;
}

State displaced(const Model& m, const State& s, const StateDerivative& d, double h) {
  State out = s;
  out.n.add_scaled(h, d.n);
  Coefficients c = s.u.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += h * d.u[i];
  out.u = GalerkinVelocity(m.galerkin(), std::move(c));
  out.b.add_scaled(h, d.b);
  return out;
}

// Derivative of a functional along the semi-discrete flow, by a five-point stencil.
template <class F>
double flow_derivative(const Model& m, const State& s, const SolverOptions& o, F functional, double h = 1e-4) {
  const StateDerivative d = m.rhs(s, o);
  auto at = [&](double k) { return functional(displaced(m, s, d, k * h)); };
  return (at(-2) - 8 * at(-1) + 8 * at(1) - at(2)) / (12 * h);
}

struct Sampled {
  DiagnosticsSeries series;
  std::vector<State> trajectory;
};

Sampled sampled_run(const Model& m, const State& s0, const SolverOptions& o, int cadence) {
  Sampled out;
  RunSettings rs;
  rs.cadence = cadence;
  rs.on_sample = [&](const State& s) {
    out.series.append(s.t, sample_diagnostics(m, s));
    out.trajectory.push_back(s);
  };
  run(m, s0, o, rs);
  return out;
}

State constant_state(const Model& m) {
  State s;
  s.n = ScalarField(m.grid(), 1.2);
  s.u = GalerkinVelocity::zero(m.galerkin());
  s.b = VectorField(m.grid(), 0.3, -0.1);
  return s;
}

}  // namespace

TEST_CASE("energy of the constant state") {
  Fixture fx;
  const Model m = fx.model();
  State s;
  s.n = ScalarField(fx.grid, 1.0);
  s.u = GalerkinVelocity::zero(m.galerkin());
  s.b = VectorField(fx.grid);
  const EnergyBudget e = total_energy(m, s);
  const double area = 4 * M_PI * M_PI;
  CHECK(e.total == doctest::Approx(area / (fx.cp.gamma - 1.0)).epsilon(1e-14));
  CHECK(e.dissipation() == 0.0);
  const BDBudget bd = bd_budget(m, s);
  CHECK(bd.functional == doctest::Approx(e.total).epsilon(1e-14));
  CHECK(bd.left() == 0.0);
  CHECK(bd.right() == 0.0);

  s.n = ScalarField(fx.grid, 0.0);
  CHECK_THROWS_AS(total_energy(m, s), SingularityError);
}

TEST_CASE("magnetic energy and kinetic homogeneity") {
  Fixture fx;
  const Model m = fx.model();
  State s = smooth_state(m, 41);
  const Spectral& sp = m.spectral();
  const EnergyBudget e = total_energy(m, s);
  const double parseval = 0.5 * (sp.parseval(sp.forward(s.b.x)) + sp.parseval(sp.forward(s.b.y)));
  CHECK(e.magnetic == doctest::Approx(parseval).epsilon(1e-12));
  Coefficients c = s.u.coefficients();
  for (double& v : c) v *= 2.0;
  s.u = GalerkinVelocity(m.galerkin(), c);
  const EnergyBudget e2 = total_energy(m, s);
  CHECK(e2.kinetic == doctest::Approx(4 * e.kinetic).epsilon(1e-13));
  CHECK(e2.internal == e.internal);
  CHECK(e2.magnetic == e.magnetic);
  CHECK(e2.quantum == e.quantum);
}

TEST_CASE("sign structure of the budget lines") {
  Fixture fx;
  fx.reg.epsilon = 1e-2;
  fx.reg.lambda_reg = 1e-6;
  const Model m = fx.model();
  const EnergyBudget e = total_energy(m, smooth_state(m, 42));
  for (double v : {e.kinetic, e.quantum, e.magnetic, e.hyper, e.visc_shear, e.resistive, e.eps_pressure,
                   e.hyper_momentum, e.hyper_density})
    CHECK(v >= 0.0);
  CHECK(e.internal >= 0.0);
  // alpha < 1: signed bulk line is negative
  CHECK(e.visc_bulk <= 0.0);
}

TEST_CASE("symmetric and antisymmetric shear split") {
  Fixture fx;
  const Model m = fx.model();
  const State s = smooth_state(m, 43);
  const Spectral& sp = m.spectral();
  const MaterialFields mat = m.materials(s.n);
  const TensorField g = sp.grad(s.u.field());
  // 2 int mu d_i u_j d_j u_i
  const ScalarField cross = pointwise(g.xx, g.xx) + pointwise(g.xy, g.yx) + pointwise(g.yx, g.xy) +
                            pointwise(g.yy, g.yy);
  const double mixed = 2.0 * sp.integral(pointwise(mat.mu, cross));
  const EnergyBudget e = total_energy(m, s);
  const BDBudget bd = bd_budget(m, s);
  CHECK(std::fabs(e.visc_shear - bd.shear_antisym - mixed) <= 1e-10 * e.visc_shear);
}

TEST_CASE("energy balance holds along the semi-discrete flow") {
  Fixture fx;
  for (double eps : {0.0, 1e-2}) {
    for (double lam : {0.0, 1e-5}) {
      fx.reg.epsilon = eps;
      fx.reg.lambda_reg = lam;
      fx.cp.gamma = 2.0;
      const Model m = fx.model();
      const State s = smooth_state(m, 44);
      const double rate = flow_derivative(m, s, fx.opts, [&](const State& x) { return total_energy(m, x).total; });
      const double d = total_energy(m, s).dissipation();
      INFO("eps=" << eps << " lambda=" << lam << " rate=" << rate << " D=" << d);
      CHECK(std::fabs(rate + d) <= 1e-6 * d);
    }
  }
}

TEST_CASE("BD balance holds along the semi-discrete flow") {
  // the drift potential leaves X_N; 32^2 leaves a spectral defect near 3e-6
  Fixture fx;
  fx.grid = Grid(64, 64);
  fx.reg.n_modes = 709;
  for (double eps : {0.0, 1e-2}) {
    for (double lam : {0.0, 1e-5}) {
      for (double b_amp : {0.0, 0.2}) {
        fx.reg.epsilon = eps;
        fx.reg.lambda_reg = lam;
        const Model m = fx.model();
        const State s = smooth_state(m, 45, b_amp);
        const double rate = flow_derivative(m, s, fx.opts, [&](const State& x) { return bd_budget(m, x).functional; });
        const BDBudget bd = bd_budget(m, s);
        INFO("eps=" << eps << " lambda=" << lam << " B=" << b_amp << " rate=" << rate << " D=" << bd.dissipation()
                    << " left=" << bd.left());
        CHECK(std::fabs(rate + bd.dissipation()) <= 1e-6 * bd.left());
      }
    }
  }
}

TEST_CASE("Young splitting of the Lorentz drift") {
  Fixture fx;
  const Model m = fx.model();
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    const State s = smooth_state(m, seed);
    const LorentzSplit ls = lorentz_split(m, s);
    CHECK(ls.weight == 1.0);
    CHECK(ls.lhs > 0.0);
    CHECK(ls.holds());
  }
}

TEST_CASE("series CSV round trip") {
  DiagnosticsSeries s;
  s.append(0.0, {{"E_total", 1.0 / 3.0}, {"mass", 2.0}});
  s.append(0.5, {{"E_total", -1e-300}, {"mass", 2.5}});
  CHECK_THROWS(s.append(1.0, {{"mass", 1.0}, {"E_total", 1.0}}));
  std::stringstream ss;
  s.write_csv(ss);
  CHECK(ss.str().find("# E_total: total energy") != std::string::npos);
  const DiagnosticsSeries r = DiagnosticsSeries::read_csv(ss);
  CHECK(r.columns() == s.columns());
  CHECK(r.rows() == s.rows());
  CHECK_THROWS_AS(r.column("missing"), std::out_of_range);
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("balance residual stencil is fourth order") {
  // F = exp(-t), D = exp(-t): dF/dt + D = 0 exactly
  auto series = [](double h) {
    DiagnosticsSeries s;
    for (int k = 0; k * h <= 1.0 + 1e-12; ++k)
      s.append(k * h, {{"F", std::exp(-k * h)}, {"D", std::exp(-k * h)}});
    return s;
  };
  const BalanceCheck c1 = balance_residual(series(0.1), "F", "D");
  const BalanceCheck c2 = balance_residual(series(0.05), "F", "D");
  CHECK(c1.residual.size() == 8);
  CHECK(refinement_order(c1, c2) == doctest::Approx(4.0).epsilon(0.05));
  CHECK_FALSE(c1.growth());

  DiagnosticsSeries grow;
  for (int k = 0; k < 3; ++k) grow.append(k, {{"F", double(k)}, {"D", 0.0}});
  const BalanceCheck g = balance_residual(grow, "F", "D");
  CHECK(g.growth());
  CHECK(g.residual.size() == 2);
  CHECK(g.max_abs == doctest::Approx(1.0));
}

TEST_CASE("energy audit on a constant run") {
  Fixture fx;
  fx.opts.dt = 0.05;
  fx.opts.t_end = 1.0;
  const Model m = fx.model();
  const Sampled sr = sampled_run(m, constant_state(m), fx.opts, 2);
  const BalanceCheck e = check_energy_inequality(sr.series);
  CHECK(e.max_abs <= 1e-12);
  CHECK_FALSE(e.growth());
  CHECK(bd_identity_residual(sr.series).max_abs <= 1e-12);
  const Report ap = apriori_bounds_report(sr.series);
  CHECK(ap.ok);
  CHECK(std::stod(ap.get("sup_grad_phi")) == 0.0);
  CHECK(std::stod(ap.get("sup_lap_mu")) == 0.0);
  CHECK(std::stod(ap.get("sup_grad_inv_sqrt_n")) == 0.0);
  CHECK(check_lorentz_split(sr.series).ok);
}

TEST_CASE("energy residual converges under dt refinement") {
  Fixture fx;
  fx.opts.t_end = 0.8;
  const Model m = fx.model();
  const State s0 = smooth_state(m, 46);
  std::vector<double> res;
  for (double dt : {0.04, 0.02}) {
    fx.opts.dt = dt;
    const Sampled sr = sampled_run(m, s0, fx.opts, 1);
    res.push_back(check_energy_inequality(sr.series).max_abs);
    CHECK(std::isfinite(std::stod(apriori_bounds_report(sr.series).get("sup_eps_cold"))));
  }
  INFO("residuals " << res[0] << " " << res[1]);
  CHECK(oracle::order(res[0], res[1]) >= 2.0);
}

TEST_CASE("weak residuals") {
  Fixture fx;
  fx.opts.t_end = 0.4;
  fx.opts.dt = 0.005;
  fx.cp.resistivity.custom = [](double) { return 0.02; };
  const Model m = fx.model();

  const Sampled flat = sampled_run(m, constant_state(m), fx.opts, 8);
  const WeakResidualReport w0 = weak_residuals(m, flat.trajectory, 7);
  CHECK(w0.battery == 20);
  CHECK(w0.max_continuity() <= 1e-10);
  CHECK(w0.max_momentum() <= 1e-10);
  CHECK(w0.max_induction() <= 1e-10);

  const State s0 = smooth_state(m, 47);
  std::vector<double> c, mo, in;
  for (int cadence : {16, 8}) {
    const Sampled sr = sampled_run(m, s0, fx.opts, cadence);
    const WeakResidualReport w = weak_residuals(m, sr.trajectory, 7);
    c.push_back(w.max_continuity());
    mo.push_back(w.max_momentum());
    in.push_back(w.max_induction());
    CHECK(w.induction_form_gap() <= 1e-8);
    CHECK(w.warnings.empty());
  }
  INFO(c[0] << " " << c[1] << " | " << mo[0] << " " << mo[1] << " | " << in[0] << " " << in[1]);
  CHECK(oracle::order(c[0], c[1]) >= 1.8);
  CHECK(oracle::order(mo[0], mo[1]) >= 1.8);
  CHECK(oracle::order(in[0], in[1]) >= 1.8);

  const std::vector<State> two(flat.trajectory.begin(), flat.trajectory.begin() + 2);
  CHECK_FALSE(weak_residuals(m, two, 7).warnings.empty());
  CHECK_THROWS_AS(weak_residuals(m, {flat.trajectory.front()}, 7), std::invalid_argument);
}

TEST_CASE("quantum term reductions") {
  const Grid g(64, 64);
  const Spectral sp(g);
  std::mt19937_64 rng(48);
  ConstitutiveParams cp;
  cp.hbar = 0.3;
  const ScalarField n = sp.dealias(oracle::random_density(g, rng, 3, 0.3));
  const LimitCaseResult r = limit_case_check(n, cp);
  CHECK(r.alpha_one_gap <= 1e-10);
  CHECK(r.alpha_half_identity_gap <= 1e-10);
  CHECK(r.alpha_half_ratio == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.alpha_half_ratio_residual <= 1e-10);
  const LimitCaseResult flat = limit_case_check(ScalarField(g, 2.0), cp);
  CHECK(flat.alpha_one_gap == 0.0);
  CHECK(flat.alpha_half_identity_gap == 0.0);
}
