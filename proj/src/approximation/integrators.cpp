#include "qmhd/approximation/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/simd/kernels.hpp"

namespace qmhd {

namespace {

State advance(const Model& model, const State& base, double h, const StateDerivative& d) {
  State s;
  s.t = base.t;
  s.step = base.step;
  s.n = base.n;
  s.n.add_scaled(h, d.n);
  Coefficients c = base.u.coefficients();
  simd::active_kernels().axpy(h, d.u, c);
  s.u = GalerkinVelocity(model.galerkin(), std::move(c));
  s.b = base.b;
  s.b.add_scaled(h, d.b);
  return s;
}

double l2(std::span<const double> v) { return std::sqrt(simd::active_kernels().dot(v, v)); }

double relative_change(std::span<const double> next, std::span<const double> prev) {
  const auto& k = simd::active_kernels();
  std::vector<double> diff(next.size());
  k.lincomb(next, -1.0, prev, diff);
  const double scale = std::max(l2(next), l2(prev));
  if (scale == 0.0) return 0.0;
  return l2(diff) / scale;
}

// (1 - h/2 kappa Lap) x1 = (1 + h/2 kappa Lap) x0 + h g, diagonal in Fourier space.
ScalarField crank_nicolson(const Spectral& sp, const ScalarField& x0, const ScalarField& g, double h,
                           double kappa) {
  Spectrum s0 = sp.forward(x0);
  const Spectrum sg = sp.forward(g);
  for (std::size_t i = 0; i < s0.coeffs().size(); ++i) {
    const double a = 0.5 * h * kappa * sp.k2(i);
    s0[i] = ((1.0 - a) * s0[i] + h * sg[i]) / (1.0 + a);
  }
  return sp.inverse(s0);
}

}  // namespace

State rk4_step(const Model& model, const State& state, double dt, const SolverOptions& options) {
  const StateDerivative k1 = model.rhs(state, options);
  const StateDerivative k2 = model.rhs(advance(model, state, 0.5 * dt, k1), options);
  const StateDerivative k3 = model.rhs(advance(model, state, 0.5 * dt, k2), options);
  const StateDerivative k4 = model.rhs(advance(model, state, dt, k3), options);

  State out;
  out.t = state.t + dt;
  out.step = state.step + 1;
  out.n = state.n;
  out.n.add_scaled(dt / 6.0, k1.n).add_scaled(dt / 3.0, k2.n).add_scaled(dt / 3.0, k3.n).add_scaled(dt / 6.0, k4.n);
  Coefficients c = state.u.coefficients();
  const auto& k = simd::active_kernels();
  k.axpy(dt / 6.0, k1.u, c);
  k.axpy(dt / 3.0, k2.u, c);
  k.axpy(dt / 3.0, k3.u, c);
  k.axpy(dt / 6.0, k4.u, c);
  out.u = GalerkinVelocity(model.galerkin(), std::move(c));
  out.b = state.b;
  out.b.add_scaled(dt / 6.0, k1.b).add_scaled(dt / 3.0, k2.b).add_scaled(dt / 3.0, k3.b).add_scaled(dt / 6.0, k4.b);
  return out;
}

ImexResult fixed_point_solve(const Model& model, const State& state, double dt, const SolverOptions& options) {
  const Spectral& sp = model.spectral();
  const GalerkinSpace& gs = model.galerkin();
  const double eps = model.regularization().epsilon;
  const ConstitutiveParams& cp = model.constitutive();

  double nu_bar = 0.0;
  for (double v : state.n.values()) nu_bar = std::max(nu_bar, law::resistivity(v, cp));

  const Coefficients momentum0 = model.mass_apply(state.n, state.u.coefficients());

  ScalarField n1 = state.n;
  Coefficients u1 = state.u.coefficients();
  VectorField b1 = state.b;
  FixedPointRecord rec;

  for (int it = 1; it <= options.fp_max_iters; ++it) {
    const ScalarField nm = 0.5 * (state.n + n1);
    if (!(nm.min() >= options.density_floor)) {
      std::ostringstream os;
      os << "density minimum " << nm.min() << " fell below floor " << options.density_floor
         << " in implicit step at t=" << state.t;
      throw PositivityError(os.str());
    }
    Coefficients um_c(u1.size());
    simd::active_kernels().lincomb(state.u.coefficients(), 1.0, u1, um_c);
    for (double& v : um_c) v *= 0.5;
    const GalerkinVelocity um(gs, std::move(um_c));
    const VectorField bm = 0.5 * (state.b + b1);
    const MaterialFields mat = model.materials(nm);

    ScalarField flux = sp.div(sp.product(nm, um.field()));
    flux *= -1.0;
    ScalarField n_next = crank_nicolson(sp, state.n, flux, dt, eps);

    ScalarField e = sp.emf(um.field(), bm);
    ScalarField excess = mat.nu_b;
    for (double& v : excess.values()) v -= nu_bar;
    e -= sp.product(excess, sp.curl2(bm));
    const VectorField g = sp.curl_scalar(e);
    VectorField b_next{crank_nicolson(sp, state.b.x, g.x, dt, nu_bar),
                       crank_nicolson(sp, state.b.y, g.y, dt, nu_bar)};

    Coefficients u_next;
    if (options.frozen_velocity) {
      u_next = state.u.coefficients();
    } else {
      Coefficients rhs = gs.project(model.momentum_forces(um.field(), um.field(), nm, bm, mat).total());
      for (double& v : rhs) v *= dt;
      simd::active_kernels().axpy(1.0, momentum0, rhs);
      u_next = model.mass_solve(n_next, rhs, options.mass_tol, options.mass_max_iters, options.density_floor).v;
    }

    const double inc = std::max({relative_change(n_next.values(), n1.values()), relative_change(u_next, u1),
                                 relative_change(b_next.x.values(), b1.x.values()),
                                 relative_change(b_next.y.values(), b1.y.values())});
    if (!rec.increments.empty()) rec.ratios.push_back(rec.increments.back() > 0.0 ? inc / rec.increments.back() : 0.0);
    rec.increments.push_back(inc);
    rec.iterations = it;
    n1 = std::move(n_next);
    u1 = std::move(u_next);
    b1 = std::move(b_next);
    if (!std::isfinite(inc)) break;
    if (inc <= options.fp_tol) {
      rec.converged = true;
      break;
    }
  }

  if (!rec.converged) {
    const double last = rec.increments.empty() ? std::numeric_limits<double>::infinity() : rec.increments.back();
    std::ostringstream os;
    os << "implicit step did not converge after " << rec.iterations << " iterations (increment " << last
       << ", dt=" << dt << "); reduce dt";
    throw FixedPointDivergenceError(os.str(), last);
  }

  ImexResult out;
  out.state.t = state.t + dt;
  out.state.step = state.step + 1;
  out.state.n = std::move(n1);
  out.state.u = GalerkinVelocity(gs, std::move(u1));
  out.state.b = std::move(b1);
  out.record = std::move(rec);
  return out;
}

State imex_step(const Model& model, const State& state, double dt, const SolverOptions& options) {
  return fixed_point_solve(model, state, dt, options).state;
}

State step(const Model& model, const State& state, double dt, const SolverOptions& options) {
  return options.integrator == Integrator::imex ? imex_step(model, state, dt, options)
                                                : rk4_step(model, state, dt, options);
}

double suggest_dt(const Model& model, const State& state, double cfl) {
  const auto& k = simd::active_kernels();
  const ConstitutiveParams& cp = model.constitutive();
  const RegularizationParams& reg = model.regularization();
  const double kmax = model.spectral().dealias_radius();

  const double umax = std::max(k.max_abs(state.u.field().x.values()), k.max_abs(state.u.field().y.values()));
  const double bmax = std::max(k.max_abs(state.b.x.values()), k.max_abs(state.b.y.values()));
  double sound = 0.0, visc = 0.0, nu = 0.0;
  const double n_min = state.n.min();
  for (double v : state.n.values()) {
    sound = std::max(sound, law::pressure_deriv(v, cp) + law::cold_pressure_deriv(v, cp));
    visc = std::max(visc, law::shear_viscosity(v, cp) * (2.0 + std::fabs(2.0 * (cp.alpha - 1.0))));
    nu = std::max(nu, law::resistivity(v, cp));
  }
  const double speed = umax + std::sqrt(sound + bmax * bmax / n_min) + cp.hbar * kmax;
  double rate = speed * kmax;
  rate = std::max(rate, visc / n_min * kmax * kmax);
  rate = std::max(rate, nu * kmax * kmax);
  rate = std::max(rate, reg.epsilon * kmax * kmax);
  if (reg.lambda_reg > 0.0) rate = std::max(rate, reg.lambda_reg * state.n.max() * std::pow(kmax, 4 * reg.s + 2));
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return cfl * 2.8 / rate;
}

std::pair<double, double> max_principle_envelope(double n0_min, double n0_max, double div_integral) {
  return {n0_min * std::exp(-div_integral), n0_max * std::exp(div_integral)};
}

Envelope max_principle_envelope(double n0_min, double n0_max, const std::vector<double>& times,
                                const std::vector<double>& div_sup) {
  if (times.size() != div_sup.size()) throw ParameterError("envelope: times and div_sup differ in length");
  Envelope env;
  double integral = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) integral += 0.5 * (times[i] - times[i - 1]) * (div_sup[i] + div_sup[i - 1]);
    const auto [lo, hi] = max_principle_envelope(n0_min, n0_max, integral);
    env.t.push_back(times[i]);
    env.lower.push_back(lo);
    env.upper.push_back(hi);
  }
  return env;
}

}  // namespace qmhd
