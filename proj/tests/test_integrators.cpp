#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "qmhd/approximation/simulation.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;

namespace {

struct Setup {
  Grid grid{32, 32};
  ConstitutiveParams cp;
  RegularizationParams reg;
  SolverOptions opts;
  Setup() {
    cp.hbar = 0.05;
    reg.n_modes = 20;
    reg.epsilon = 1e-3;
    opts.dt = 1e-2;
    opts.t_end = 0.2;
  }
};

State smooth_state(const Model& m, std::uint64_t seed, double amp = 0.2) {
  std::mt19937_64 rng(seed);
  const Spectral& sp = m.spectral();
  State s;
  s.n = sp.dealias(oracle::random_density(m.grid(), rng, 3, 0.2));
  s.u = GalerkinVelocity::from_field(m.galerkin(), oracle::random_trig_vector(m.grid(), rng, 2, amp));
  s.b = sp.curl_scalar(oracle::random_trig(m.grid(), rng, 2, 0.1));
  return s;
}

double state_distance(const Model& m, const State& a, const State& b) {
  const Spectral& sp = m.spectral();
  return sp.norm_l2(a.n - b.n) + sp.norm_l2(a.u.field() - b.u.field()) + sp.norm_l2(a.b - b.b);
}

}  // namespace

TEST_CASE("steps_to lands on t_end") {
  CHECK(steps_to(0.0, 1.0, 0.1) == 10);
  CHECK(steps_to(0.0, 1.0, 0.3) == 4);
  CHECK(steps_to(0.5, 0.5, 0.1) == 0);
  CHECK(steps_to(0.0, 1e-3, 1.0) == 1);
}

TEST_CASE("maximum principle envelope") {
  const auto [lo, hi] = max_principle_envelope(0.5, 2.0, 1.0);
  CHECK(lo == doctest::Approx(0.5 * std::exp(-1.0)));
  CHECK(hi == doctest::Approx(2.0 * std::exp(1.0)));
  const auto [l0, h0] = max_principle_envelope(0.5, 2.0, 0.0);
  CHECK(l0 == 0.5);
  CHECK(h0 == 2.0);
  const Envelope env = max_principle_envelope(0.5, 2.0, {0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
  CHECK(env.lower.back() == doctest::Approx(0.5 * std::exp(-1.0)));
  CHECK(env.upper.back() == doctest::Approx(2.0 * std::exp(1.0)));
}

TEST_CASE("constant state is stationary under both integrators") {
  Setup su;
  su.reg.lambda_reg = 1e-8;
  const Model m(su.grid, su.cp, su.reg);
  State s;
  s.n = ScalarField(su.grid, 1.3);
  s.u = GalerkinVelocity::zero(m.galerkin());
  s.b = VectorField(su.grid, 0.2, 0.1);
  for (Integrator integ : {Integrator::rk4, Integrator::imex}) {
    su.opts.integrator = integ;
    State cur = s;
    for (int k = 0; k < 50; ++k) cur = step(m, cur, su.opts.dt, su.opts);
    CHECK(state_distance(m, cur, s) <= 1e-12);
  }
  const ImexResult r = fixed_point_solve(m, s, su.opts.dt, su.opts);
  CHECK(r.record.iterations == 1);
  CHECK(r.record.converged);
}

TEST_CASE("fixed point contracts for small dt") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  const State s = smooth_state(m, 31);
  const ImexResult r = fixed_point_solve(m, s, 1e-3, su.opts);
  CHECK(r.record.converged);
  CHECK(r.record.iterations >= 2);
  for (double q : r.record.ratios) CHECK(q < 1.0);

  SolverOptions tight = su.opts;
  tight.fp_max_iters = 2;
  CHECK_THROWS_AS(fixed_point_solve(m, s, 1e-2, tight), FixedPointDivergenceError);
}

TEST_CASE("RK4 converges at fourth order") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  const State s0 = smooth_state(m, 32);
  auto integrate = [&](double dt) {
    SolverOptions o = su.opts;
    o.dt = dt;
    return run(m, s0, o).final;
  };
  const State ref = integrate(0.05 / 16);
  const double e1 = state_distance(m, integrate(0.05), ref);
  const double e2 = state_distance(m, integrate(0.025), ref);
  CHECK(oracle::order(e1, e2) > 3.7);
}

TEST_CASE("IMEX agrees with RK4 to second order") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  const State s0 = smooth_state(m, 33);
  SolverOptions rk = su.opts;
  rk.dt = 0.0025;
  const State ref = run(m, s0, rk).final;
  auto imex = [&](double dt) {
    SolverOptions o = su.opts;
    o.integrator = Integrator::imex;
    o.dt = dt;
    return run(m, s0, o).final;
  };
  const double e1 = state_distance(m, imex(0.04), ref);
  const double e2 = state_distance(m, imex(0.02), ref);
  CHECK(oracle::order(e1, e2) > 1.8);
}

TEST_CASE("mass and divergence are preserved") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  const State s0 = smooth_state(m, 34);
  const Spectral& sp = m.spectral();
  const double mass0 = sp.integral(s0.n);
  for (Integrator integ : {Integrator::rk4, Integrator::imex}) {
    su.opts.integrator = integ;
    const RunResult r = run(m, s0, su.opts);
    CHECK(std::fabs(sp.integral(r.final.n) - mass0) <= 1e-12 * mass0);
    CHECK(sp.norm_l2(sp.div(r.final.b)) <= 1e-12);
    CHECK(r.final.t == su.opts.t_end);
  }
}

TEST_CASE("run samples at cadence and reports failures") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  State s0 = smooth_state(m, 35);
  RunSettings rs;
  rs.cadence = 5;
  int samples = 0;
  rs.on_sample = [&](const State&) { ++samples; };
  rs.store_trajectory = true;
  const RunResult r = run(m, s0, su.opts, rs);
  CHECK(r.steps == 20);
  CHECK(samples == 5);
  CHECK(r.trajectory.size() == 5);

  s0.n.at(3, 3) = std::nan("");
  bool failed = false;
  rs.on_failure = [&](const State& last) { failed = last.step == 0; };
  CHECK_THROWS(run(m, s0, su.opts, rs));
  CHECK(failed);
}

TEST_CASE("checkpoint round trip resumes bitwise") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  const State s0 = smooth_state(m, 36);
  const std::string path = (std::filesystem::temp_directory_path() / "qmhd_test.ckpt").string();
  SolverOptions half = su.opts;
  half.t_end = 0.1;
  const State mid = run(m, s0, half).final;
  save_checkpoint(path, mid, "[grid]\nnx = 32\n");
  const Checkpoint ck = load_checkpoint(path, m.galerkin());
  CHECK(ck.params_text == "[grid]\nnx = 32\n");
  CHECK(ck.state.step == mid.step);
  CHECK(ck.state.t == mid.t);
  const State resumed = run(m, ck.state, su.opts).final;
  const State straight = run(m, s0, su.opts).final;
  CHECK(state_distance(m, resumed, straight) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("suggested step is finite and positive") {
  Setup su;
  const Model m(su.grid, su.cp, su.reg);
  const double dt = suggest_dt(m, smooth_state(m, 37));
  CHECK(dt > 0.0);
  CHECK(std::isfinite(dt));
}
