#include "qmhd/verify/suite.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "qmhd/approximation/simulation.hpp"
#include "qmhd/diagnostics/audits.hpp"
#include "qmhd/diagnostics/limits.hpp"
#include "qmhd/diagnostics/weak.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/io/commands.hpp"
#include "qmhd/io/initial.hpp"
#include "qmhd/verify/oracles.hpp"

namespace qmhd {

namespace fs = std::filesystem;

namespace {

std::vector<double> log_samples(int count, double lo, double hi) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
  return out;
}

double max_abs(const ScalarField& f) { return std::max(std::fabs(f.min()), std::fabs(f.max())); }
double max_abs(const VectorField& v) { return std::max(max_abs(v.x), max_abs(v.y)); }

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Smooth magnetized run used by most dynamic checks.
RunConfig base_config(int n) {
  RunConfig c;
  c.nx = c.ny = n;
  c.constitutive.gamma = 2.0;
  c.constitutive.alpha = 0.5;
  c.constitutive.mu0 = 0.05;
  c.constitutive.hbar = 0.1;
  c.regularization = RegularizationParams{0.0, 0.0, 1, 0};
  c.solver.dt = 0.005;
  c.solver.t_end = 1.0;
  c.initial.kind = "smooth-random";
  c.initial.amplitude = 0.2;
  c.initial.velocity_amplitude = 0.2;
  c.initial.field_amplitude = 0.2;
  c.initial.kmax = 3;
  c.cadence = 1;
  c.output_dir.clear();
  c.final_snapshot = false;
  return c;
}

struct Sampled {
  DiagnosticsSeries series;
  std::vector<State> trajectory;
  State final;
};

Sampled sampled_run(const Model& model, const State& s0, const SolverOptions& opts, int cadence, bool store) {
  Sampled out;
  RunSettings rs;
  rs.cadence = cadence;
  rs.store_trajectory = store;
  rs.on_sample = [&](const State& s) { out.series.append(s.t, sample_diagnostics(model, s)); };
  RunResult r = run(model, s0, opts, rs);
  out.trajectory = std::move(r.trajectory);
  out.final = std::move(r.final);
  return out;
}

struct Setup {
  RunConfig config;
  Model model;
  State initial;

  explicit Setup(const RunConfig& c)
      : config(c),
        model(Grid(c.nx, c.ny), c.constitutive, c.resolved_regularization()),
        initial(generate_ic(c.initial, model, c.solver.density_floor).state) {}
};

// ---------------------------------------------------------------- 1
CriterionResult constitutive_identities(const SuiteOptions&) {
  CriterionResult res;
  Report& r = res.report;
  const auto ns = log_samples(200, 1e-3, 1e3);
  double worst_h = 0.0, worst_hc = 0.0, worst_lambda = 0.0;
  int corridor_violations = 0;
  struct Case {
    double gamma, alpha, c1, c2;
  };
  for (const Case& k : {Case{1.4, 0.5, 1.0, 1.0}, Case{2.0, 1.0, 0.7, 1.3}, Case{3.0, 0.25, 2.0, 0.5}}) {
    ConstitutiveParams p;
    p.gamma = k.gamma;
    p.alpha = k.alpha;
    p.c1 = k.c1;
    p.c2 = k.c2;
    auto h = [&](double s) { return law::enthalpy(s, p); };
    auto hc = [&](double s) { return law::enthalpy_cold(s, p); };
    auto mu = [&](double s) { return law::shear_viscosity(s, p); };
    for (double n : ns) {
      const double P = law::pressure(n, p);
      worst_h = std::max(worst_h, std::fabs(n * oracle::derivative(h, n) - h(n) - P) / P);
      const double pc = law::cold_pressure(n, p);
      worst_hc = std::max(worst_hc, std::fabs(n * oracle::derivative(hc, n) - hc(n) - pc) / (1.0 + std::fabs(pc)));
      worst_lambda = std::max(worst_lambda,
                              std::fabs(law::bulk_viscosity(n, p) - 2.0 * (n * oracle::derivative(mu, n) - mu(n))));
    }
    corridor_violations += check_resistivity_corridor(p, 200, 1e-3, 1e3).violations;
  }
  r.add("enthalpy_rel_max", worst_h);
  r.add("cold_enthalpy_scaled_max", worst_hc);
  r.add("bulk_viscosity_abs_max", worst_lambda);
  r.add("corridor_violations", static_cast<long>(corridor_violations));
  r.check("enthalpy_le_1e-6", worst_h <= 1e-6);
  r.check("cold_enthalpy_le_1e-6", worst_hc <= 1e-6);
  r.check("bulk_viscosity_le_1e-10", worst_lambda <= 1e-10);
  r.check("corridor", corridor_violations == 0);
  res.summary = "H " + fmt(worst_h) + ", H_c " + fmt(worst_hc) + ", lambda " + fmt(worst_lambda) +
                ", corridor violations " + std::to_string(corridor_violations);
  return res;
}

// ---------------------------------------------------------------- 2
struct Trig {
  int kx, ky;
  double a, b;
};

CriterionResult spectral_exactness(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  std::mt19937_64 rng(opt.seed);
  double deriv_err = 0.0, parseval_err = 0.0, ibp_err = 0.0;
  for (int n : {16, 32, 64}) {
    const Grid g(n, n);
    const Spectral sp(g);
    const int kmax = n / 3 - 1;
    std::vector<Trig> modes;
    for (int kx = 0; kx <= kmax; ++kx)
      for (int ky = -kmax; ky <= kmax; ++ky) {
        if (kx * kx + ky * ky > kmax * kmax || (kx == 0 && ky <= 0)) continue;
        modes.push_back({kx, ky, 2.0 * oracle::uniform01(rng) - 1.0, 2.0 * oracle::uniform01(rng) - 1.0});
      }
    auto eval = [&](auto weight) {
      return ScalarField::from_function(g, [&](double x, double y) {
        double v = 0.0;
        for (const Trig& t : modes) {
          const double ph = t.kx * x + t.ky * y;
          v += weight(t, std::cos(ph), std::sin(ph));
        }
        return v;
      });
    };
    const ScalarField f = eval([](const Trig& t, double c, double s) { return t.a * c + t.b * s; });
    const ScalarField fx = eval([](const Trig& t, double c, double s) { return t.kx * (t.b * c - t.a * s); });
    const ScalarField fy = eval([](const Trig& t, double c, double s) { return t.ky * (t.b * c - t.a * s); });
    const ScalarField lap = eval([](const Trig& t, double c, double s) {
      return -double(t.kx * t.kx + t.ky * t.ky) * (t.a * c + t.b * s);
    });
    const ScalarField bih = eval([](const Trig& t, double c, double s) {
      const double k2 = t.kx * t.kx + t.ky * t.ky;
      return k2 * k2 * (t.a * c + t.b * s);
    });
    auto rel = [](const ScalarField& a, const ScalarField& b) { return max_abs(a - b) / std::max(1.0, max_abs(b)); };
    const VectorField gr = sp.grad(f);
    deriv_err = std::max({deriv_err, rel(gr.x, fx), rel(gr.y, fy), rel(sp.laplacian(f), lap), rel(sp.hyper(f, 2), bih),
                          rel(sp.div(gr), lap)});

    for (int m : {0, 1, 3, 5}) {
      double exact = 0.0;
      for (const Trig& t : modes)
        exact += 2.0 * M_PI * M_PI * std::pow(double(t.kx * t.kx + t.ky * t.ky), m) * (t.a * t.a + t.b * t.b);
      parseval_err = std::max(parseval_err, std::fabs(sp.seminorm_sq(f, m) - exact) / exact);
    }
    const double quad = sp.inner(f, f);
    double exact0 = 0.0;
    for (const Trig& t : modes) exact0 += 2.0 * M_PI * M_PI * (t.a * t.a + t.b * t.b);
    parseval_err = std::max(parseval_err, std::fabs(quad - exact0) / exact0);

    const ScalarField h = oracle::random_trig(g, rng, kmax / 2);
    const VectorField v = oracle::random_trig_vector(g, rng, kmax / 2);
    const double a1 = sp.inner(h, sp.div(v));
    const double b1 = -sp.inner(sp.grad(h), v);
    const double s1 = sp.norm_l2(sp.grad(h)) * sp.norm_l2(v);
    const double a2 = sp.inner(h, sp.laplacian(f));
    const double b2 = -sp.inner(sp.grad(h), sp.grad(f));
    const double s2 = sp.norm_l2(sp.grad(h)) * sp.norm_l2(sp.grad(f));
    ibp_err = std::max({ibp_err, std::fabs(a1 - b1) / s1, std::fabs(a2 - b2) / s2});
  }
  r.add("derivative_rel_max", deriv_err);
  r.add("parseval_rel_max", parseval_err);
  r.add("integration_by_parts_rel_max", ibp_err);
  r.check("derivatives_le_1e-12", deriv_err <= 1e-12);
  r.check("parseval_le_1e-10", parseval_err <= 1e-10);
  r.check("integration_by_parts_le_1e-11", ibp_err <= 1e-11);
  res.summary = "derivatives " + fmt(deriv_err) + ", Parseval " + fmt(parseval_err) + ", by parts " + fmt(ibp_err);
  return res;
}

// ---------------------------------------------------------------- 3
CriterionResult conservation(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  RunConfig c = base_config(opt.fast ? 32 : 64);
  c.regularization.epsilon = 1e-3;
  c.cadence = 10;
  c.initial.seed = opt.seed;
  const RunOutcome o = execute_run(c, "", false);
  const auto mass = o.series.column("mass");
  double drift = 0.0;
  for (double m : mass) drift = std::max(drift, std::fabs(m - mass.front()) / mass.front());
  const double div_b = max_of(o.series.column("div_B_l2"));
  r.add("grid", static_cast<long>(c.nx));
  r.add("t_end", o.final.t);
  r.add("mass_drift_rel", drift);
  r.add("div_B_l2_max", div_b);
  r.check("mass_le_1e-10", drift <= 1e-10);
  r.check("div_B_le_1e-11", div_b <= 1e-11);
  res.summary = "mass drift " + fmt(drift) + ", max ||div B|| " + fmt(div_b);
  return res;
}

// ---------------------------------------------------------------- 4
CriterionResult stationarity(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  RunConfig c = base_config(opt.fast ? 16 : 32);
  c.initial.kind = "constant";
  c.initial.mean_density = 1.3;
  c.initial.mean_bx = 0.2;
  c.initial.mean_by = -0.1;
  c.regularization.epsilon = 1e-3;
  c.regularization.lambda_reg = 1e-6;
  c.solver.dt = 0.01;
  c.solver.t_end = 10.0;
  const Setup s(c);
  const RunResult out = run(s.model, s.initial, c.solver);
  const Spectral& sp = s.model.spectral();
  const Grid& g = s.model.grid();
  const double u = sp.norm_l2(out.final.u.field());
  const double dn = sp.norm_l2(out.final.n - ScalarField(g, 1.3));
  const double db = sp.norm_l2(out.final.b - VectorField(g, 0.2, -0.1));
  r.add("steps", out.steps);
  r.add("u_l2", u);
  r.add("n_minus_mean_l2", dn);
  r.add("B_minus_mean_l2", db);
  r.check("steps_1000", out.steps == 1000);
  r.check("all_le_1e-12", u <= 1e-12 && dn <= 1e-12 && db <= 1e-12);
  res.summary = std::to_string(out.steps) + " steps, ||u|| " + fmt(u) + ", ||n-n0|| " + fmt(dn) + ", ||B-B0|| " + fmt(db);
  return res;
}

// ---------------------------------------------------------------- 5
CriterionResult energy_identity(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  RunConfig c = base_config(opt.fast ? 32 : 64);
  c.regularization.epsilon = 1e-3;
  c.initial.seed = opt.seed;
  c.solver.t_end = 0.4;
  const Setup s(c);
  std::vector<double> residual;
  for (double dt : {0.02, 0.01, 0.005}) {
    SolverOptions o = c.solver;
    o.dt = dt;
    const Sampled run = sampled_run(s.model, s.initial, o, 1, false);
    const BalanceCheck b = check_energy_inequality(run.series);
    residual.push_back(b.max_abs);
    r.add("residual_dt_" + format_number(dt), b.max_abs);
  }
  const double o1 = oracle::order(residual[0], residual[1]);
  const double o2 = oracle::order(residual[1], residual[2]);
  r.add("order_first_halving", o1);
  r.add("order_second_halving", o2);
  r.check("order_ge_2", o1 >= 2.0 && o2 >= 2.0);

  // single resistive mode, u = 0 frozen, n = 1: E_B(t) = E_B(0) exp(-2 nu k^2 t)
  RunConfig d = base_config(32);
  d.initial.kind = "constant";
  d.solver.frozen_velocity = true;
  d.solver.dt = 0.01;
  d.solver.t_end = 1.0;
  const Setup m(d);
  State st = m.initial;
  const int k = 2;
  st.b = VectorField(ScalarField(m.model.grid()),
                     ScalarField::from_function(m.model.grid(), [&](double x, double) { return std::sin(k * x); }));
  const double e0 = total_energy(m.model, st).magnetic;
  const RunResult out = run(m.model, st, d.solver);
  const double e1 = total_energy(m.model, out.final).magnetic;
  const double rate = -std::log(e1 / e0) / (2.0 * out.final.t);
  const double expected = law::resistivity(1.0, d.constitutive) * k * k;
  const double rate_err = std::fabs(rate - expected) / expected;
  r.add("decay_rate", rate);
  r.add("decay_rate_expected", expected);
  r.add("decay_rate_rel_err", rate_err);
  r.check("decay_rate_le_1e-6", rate_err <= 1e-6);
  res.summary = "residual orders " + fmt(o1) + ", " + fmt(o2) + "; resistive rate rel. err " + fmt(rate_err);
  return res;
}

// ---------------------------------------------------------------- 6
CriterionResult maximum_principle(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  RunConfig c = base_config(opt.fast ? 16 : 32);
  c.initial.velocity_amplitude = 0.5;
  c.initial.seed = opt.seed;
  c.regularization.epsilon = 1e-2;
  c.solver.frozen_velocity = true;
  c.solver.dt = 0.01;
  c.solver.t_end = 1.0;
  const Setup s(c);
  const Sampled run = sampled_run(s.model, s.initial, c.solver, 1, false);
  const auto t = run.series.times();
  const auto lo = run.series.column("n_min");
  const auto hi = run.series.column("n_max");
  const Envelope env = max_principle_envelope(s.initial.n.min(), s.initial.n.max(), t, run.series.column("div_u_sup"));
  double excess = -INFINITY, margin = INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) {
    excess = std::max({excess, env.lower[i] - lo[i], hi[i] - env.upper[i]});
    margin = std::min({margin, lo[i] - env.lower[i], env.upper[i] - hi[i]});
  }
  r.add("samples", static_cast<long>(t.size()));
  r.add("max_excess", excess);
  r.add("min_margin", margin);
  r.add("n_min_final", lo.back());
  r.add("envelope_lower_final", env.lower.back());
  r.add("n_max_final", hi.back());
  r.add("envelope_upper_final", env.upper.back());
  r.check("inside_envelope_1e-8", excess <= 1e-8);
  res.summary = "largest excursion outside the envelope " + fmt(excess) + " (slack 1e-8)";
  return res;
}

// ---------------------------------------------------------------- 7
CriterionResult bd_identity(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  RunConfig c = base_config(opt.fast ? 32 : 64);
  c.initial.field_amplitude = 0.0;
  c.initial.velocity_amplitude = 0.3;
  c.initial.seed = opt.seed;
  c.solver.t_end = 0.4;
  const Setup s(c);
  std::vector<double> residual;
  for (double dt : {0.02, 0.01, 0.005}) {
    SolverOptions o = c.solver;
    o.dt = dt;
    const Sampled run = sampled_run(s.model, s.initial, o, 1, false);
    const BalanceCheck b = bd_identity_residual(run.series);
    residual.push_back(b.max_abs);
    r.add("residual_dt_" + format_number(dt), b.max_abs);
  }
  const double o1 = oracle::order(residual[0], residual[1]);
  const double o2 = oracle::order(residual[1], residual[2]);
  r.add("order_first_halving", o1);
  r.add("order_second_halving", o2);
  r.check("order_ge_2", o1 >= 2.0 && o2 >= 2.0);

  RunConfig m = base_config(32);
  m.initial.field_amplitude = 0.4;
  m.initial.mean_bx = 0.3;
  m.initial.seed = opt.seed + 1;
  m.regularization.epsilon = 1e-3;
  m.solver.t_end = 0.5;
  m.cadence = 5;
  const RunOutcome mo = execute_run(m, "", false);
  const Report split = check_lorentz_split(mo.series);
  for (const auto& [k, v] : split.entries) r.entries.emplace_back("lorentz_" + k, v);
  r.check("lorentz_split_every_sample", split.ok);
  res.summary = "BD residual orders " + fmt(o1) + ", " + fmt(o2) + "; Lorentz splitting violations " +
                split.get("violations");
  return res;
}

// ---------------------------------------------------------------- 8
CriterionResult mass_operator(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  const Grid g(32, 32);
  const Model model(g, ConstitutiveParams{}, RegularizationParams{0.0, 0.0, 1, GalerkinSpace::max_modes(g)});
  const std::size_t dofs = model.galerkin().dofs();
  std::mt19937_64 rng(opt.seed);
  auto random_coeffs = [&] {
    Coefficients v(dofs);
    for (double& x : v) x = 2.0 * oracle::uniform01(rng) - 1.0;
    return GalerkinVelocity(model.galerkin(), v).coefficients();
  };
  const double fp_tol = 1e-10;
  double roundtrip = 0.0, symmetry = 0.0, positivity_margin = INFINITY;
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarField n = oracle::random_density(g, rng, 3, 0.5);
    const Coefficients rhs = random_coeffs();
    const MassSolveResult sol = model.mass_solve(n, rhs, 1e-13, 1000, 1e-3);
    Coefficients back = model.mass_apply(n, sol.v);
    for (std::size_t i = 0; i < dofs; ++i) back[i] -= rhs[i];
    roundtrip = std::max(roundtrip, norm(back) / norm(rhs));
    const Coefficients v = random_coeffs(), w = random_coeffs();
    const double a = dot(model.mass_apply(n, v), w), b = dot(model.mass_apply(n, w), v);
    symmetry = std::max(symmetry, std::fabs(a - b) / (norm(v) * norm(w)));
    positivity_margin = std::min(positivity_margin, dot(model.mass_apply(n, v), v) / (n.min() * dot(v, v)) - 1.0);
  }

  // Lipschitz in density: ||M^-1[n1] r - M^-1[n2] r|| / (||n1 - n2||_2 ||r||)
  const Spectral& sp = model.spectral();
  const ScalarField n1 = oracle::random_density(g, rng, 3, 0.3);
  const Coefficients rhs = random_coeffs();
  const Coefficients v1 = model.mass_solve(n1, rhs, 1e-14, 2000, 1e-3).v;
  std::vector<double> constants;
  double bound_excess = -INFINITY;
  for (int j = 0; j < 10; ++j) {
    const double amp = 0.2 * std::pow(0.5, j);
    ScalarField delta = oracle::random_trig(g, rng, 3);
    delta *= amp / max_abs(delta);
    const ScalarField n2 = n1 + delta;
    Coefficients diff = model.mass_solve(n2, rhs, 1e-14, 2000, 1e-3).v;
    for (std::size_t i = 0; i < dofs; ++i) diff[i] -= v1[i];
    const double c = norm(diff) / (sp.norm_l2(delta) * norm(rhs));
    constants.push_back(c);
    // M1^-1 - M2^-1 = M1^-1 (M2 - M1) M2^-1 and ||M2 - M1|| <= ||n2 - n1||_inf
    const double bound = max_abs(delta) * norm(rhs) / (n1.min() * n2.min());
    bound_excess = std::max(bound_excess, norm(diff) / bound - 1.0);
  }
  double cmin = INFINITY, cmax = 0.0;
  for (double c : constants) cmin = std::min(cmin, c), cmax = std::max(cmax, c);
  r.add("roundtrip_rel_max", roundtrip);
  r.add("symmetry_rel_max", symmetry);
  r.add("positivity_margin_min", positivity_margin);
  r.add("lipschitz_constant", cmax);
  r.add("lipschitz_spread", cmax / cmin);
  r.add("operator_bound_excess", bound_excess);
  r.check("roundtrip_le_fp_tol", roundtrip <= fp_tol);
  r.check("symmetric_1e-12", symmetry <= 1e-12);
  r.check("positive_definite", positivity_margin >= -1e-10);
  r.check("lipschitz_within_operator_bound", bound_excess <= 1e-8);
  r.check("lipschitz_constant_stable", std::isfinite(cmax) && cmax / cmin <= 10.0);
  res.summary = "round trip " + fmt(roundtrip) + ", symmetry " + fmt(symmetry) + ", Lipschitz C " + fmt(cmax) +
                " (spread " + fmt(cmax / cmin) + ")";
  return res;
}

// ---------------------------------------------------------------- 9
CriterionResult reductions(const SuiteOptions& opt) {
  CriterionResult res;
  const Grid g(opt.fast ? 32 : 64, opt.fast ? 32 : 64);
  std::mt19937_64 rng(opt.seed);
  const ScalarField n = Spectral(g).dealias(oracle::random_density(g, rng, 3, 0.3));
  ConstitutiveParams p;
  p.hbar = 0.1;
  const LimitCaseResult l = limit_case_check(n, p);
  res.report = l.report();
  res.report.check("alpha_one_le_1e-10", l.alpha_one_gap <= 1e-10);
  res.report.check("alpha_half_le_1e-10", l.alpha_half_identity_gap <= 1e-10);
  res.summary = "alpha=1 gap " + fmt(l.alpha_one_gap) + ", alpha=1/2 gap " + fmt(l.alpha_half_identity_gap) +
                ", force ratio literal " + fmt(l.alpha_half_ratio) + " / reduced form 1";
  return res;
}

// ---------------------------------------------------------------- 10
CriterionResult refinement(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  const int jobs = static_cast<int>(std::max(1u, std::min(4u, std::thread::hardware_concurrency())));

  SweepConfig sn;
  sn.base = base_config(16);
  sn.base.initial.seed = opt.seed;
  sn.base.solver.t_end = opt.fast ? 0.25 : 0.5;
  sn.base.cadence = 1000;
  sn.n = {16, 32, 64};
  const SweepSummary a = execute_sweep(sn, "", jobs);
  std::vector<double> cauchy;
  for (const auto& c : a.cells)
    if (std::isfinite(c.cauchy_u)) {
      cauchy.push_back(c.cauchy_u);
      r.add("cauchy_u_N" + std::to_string(c.cell.n), c.cauchy_u);
    }
  bool monotone = cauchy.size() == 2 && a.failed() == 0;
  for (std::size_t i = 1; i < cauchy.size(); ++i) monotone = monotone && cauchy[i] < cauchy[i - 1];
  r.check("cauchy_decreasing", monotone);

  SweepConfig se;
  se.base = base_config(32);
  se.base.initial.seed = opt.seed;
  se.base.solver.t_end = opt.fast ? 0.25 : 0.5;
  se.base.cadence = 1000;
  se.epsilon = {0.0, 1e-3, 1e-2};
  se.lambda_reg = {0.0, 1e-7, 1e-6};
  const SweepSummary b = execute_sweep(se, "", jobs);
  double d_big = NAN, d_small = NAN;
  for (const auto& c : b.cells) {
    if (c.cell.epsilon == 1e-2 && c.cell.lambda_reg == 1e-6) d_big = c.limit_distance;
    if (c.cell.epsilon == 1e-3 && c.cell.lambda_reg == 1e-7) d_small = c.limit_distance;
  }
  r.add("limit_distance_eps_1e-2", d_big);
  r.add("limit_distance_eps_1e-3", d_small);
  r.add("limit_ratio", d_big / d_small);
  r.check("limit_bounded_and_decreasing", b.failed() == 0 && std::isfinite(d_big) && d_small < d_big);
  res.summary = "Cauchy " + (cauchy.size() == 2 ? fmt(cauchy[0]) + " > " + fmt(cauchy[1]) : std::string("missing")) +
                "; (eps, lambda) limit " + fmt(d_big) + " -> " + fmt(d_small);
  return res;
}

// ---------------------------------------------------------------- 11
CriterionResult weak_forms(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  RunConfig c = base_config(opt.fast ? 16 : 32);
  c.initial.seed = opt.seed;
  c.constitutive.resistivity.d1 = 0.02;
  c.solver.t_end = 0.4;
  const Setup s(c);
  SolverOptions o = c.solver;
  const Sampled run = sampled_run(s.model, s.initial, o, 4, true);
  std::vector<WeakResidualReport> reps;
  for (int stride : {4, 2, 1}) {
    std::vector<State> sub;
    for (std::size_t k = 0; k < run.trajectory.size(); k += stride) sub.push_back(run.trajectory[k]);
    reps.push_back(weak_residuals(s.model, sub, opt.seed, 20));
  }
  auto order = [&](auto get) {
    return std::min(oracle::order(get(reps[0]), get(reps[1])), oracle::order(get(reps[1]), get(reps[2])));
  };
  const double oc = order([](const WeakResidualReport& w) { return w.max_continuity(); });
  const double om = order([](const WeakResidualReport& w) { return w.max_momentum(); });
  const double oi = order([](const WeakResidualReport& w) { return w.max_induction(); });
  r.add("continuity_max_coarse", reps[0].max_continuity());
  r.add("continuity_max_fine", reps[2].max_continuity());
  r.add("momentum_max_coarse", reps[0].max_momentum());
  r.add("momentum_max_fine", reps[2].max_momentum());
  r.add("induction_max_coarse", reps[0].max_induction());
  r.add("induction_max_fine", reps[2].max_induction());
  r.add("order_continuity", oc);
  r.add("order_momentum", om);
  r.add("order_induction", oi);
  r.check("quadrature_order_ge_1.8", oc >= 1.8 && om >= 1.8 && oi >= 1.8);

  RunConfig k = base_config(16);
  k.initial.kind = "constant";
  k.initial.mean_density = 1.3;
  k.initial.mean_bx = 0.2;
  k.initial.mean_by = -0.1;
  k.solver.t_end = 0.2;
  const Setup cs(k);
  const Sampled crun = sampled_run(cs.model, cs.initial, k.solver, 5, true);
  const WeakResidualReport cw = weak_residuals(cs.model, crun.trajectory, opt.seed, 20);
  const double cmax = std::max({cw.max_continuity(), cw.max_momentum(), cw.max_induction()});
  r.add("constant_state_max", cmax);
  r.check("constant_state_le_1e-10", cmax <= 1e-10);
  res.summary = "orders continuity " + fmt(oc) + ", momentum " + fmt(om) + ", induction " + fmt(oi) +
                "; constant state " + fmt(cmax);
  return res;
}

// ---------------------------------------------------------------- 12
std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

CriterionResult reproducibility(const SuiteOptions& opt) {
  CriterionResult res;
  Report& r = res.report;
  const fs::path root = fs::temp_directory_path() /
                        ("qmhd_verify_" + std::to_string(opt.seed) + "_" +
                         std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(root);
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{root};

  RunConfig c = base_config(opt.fast ? 16 : 32);
  c.initial.seed = opt.seed;
  c.regularization.epsilon = 1e-3;
  c.solver.t_end = 0.2;
  c.cadence = 4;
  RunConfig a = c, b = c;
  a.output_dir = (root / "a").string();
  b.output_dir = (root / "b").string();
  const RunOutcome ra = execute_run(a);
  execute_run(b);
  const bool identical = slurp(root / "a" / "series.csv") == slurp(root / "b" / "series.csv");
  r.check("csv_byte_identical", identical);

  RunConfig half = c;
  half.output_dir = (root / "resume").string();
  half.solver.t_end = 0.1;
  execute_run(half);
  RunConfig rest = c;
  rest.output_dir = half.output_dir;
  const RunOutcome rr = execute_run(rest, (root / "resume" / "checkpoint.bin").string());
  const Coefficients& ua = ra.final.u.coefficients();
  const Coefficients& ub = rr.final.u.coefficients();
  double du = 0.0;
  for (std::size_t i = 0; i < ua.size(); ++i) du = std::max(du, std::fabs(ua[i] - ub[i]));
  const double gap = std::max({max_abs(ra.final.n - rr.final.n), du, max_abs(ra.final.b - rr.final.b),
                               std::fabs(ra.final.t - rr.final.t)});
  r.add("resume_max_abs_gap", gap);
  r.add("resume_series_identical",
        std::string(slurp(root / "a" / "series.csv") == slurp(root / "resume" / "series.csv") ? "yes" : "no"));
  r.check("resume_le_1e-13", gap <= 1e-13 && rr.final.step == ra.final.step);
  res.summary = std::string("CSV ") + (identical ? "byte-identical" : "differs") + ", resume gap " + fmt(gap);
  return res;
}

struct Entry {
  const char* name;
  CriterionResult (*fn)(const SuiteOptions&);
};

constexpr Entry kCriteria[kCriterionCount] = {
    {"constitutive identities", constitutive_identities},
    {"spectral exactness", spectral_exactness},
    {"conservation", conservation},
    {"stationarity", stationarity},
    {"energy identity", energy_identity},
    {"maximum principle", maximum_principle},
    {"BD identity", bd_identity},
    {"mass operator", mass_operator},
    {"quantum reductions", reductions},
    {"refinement studies", refinement},
    {"weak residuals", weak_forms},
    {"reproducibility", reproducibility},
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id out of range");
  const Entry& e = kCriteria[id - 1];
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult res;
  try {
    res = e.fn(options);
    res.passed = res.report.ok;
  } catch (const std::exception& ex) {
    res.passed = false;
    res.summary = std::string("error: ") + ex.what();
    res.report.add("error", std::string(ex.what()));
    res.report.ok = false;
  }
  res.id = id;
  res.name = e.name;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.report.title = "criterion_" + std::to_string(id);
  res.report.add("name", res.name);
  res.report.add("seconds", res.seconds);
  return res;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? " " : "") << r.id << ' ' << r.name << ": " << r.summary
     << " (" << fmt(r.seconds) << " s)";
  return os.str();
}

}  // namespace qmhd
