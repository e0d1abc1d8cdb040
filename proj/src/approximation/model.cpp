#include "qmhd/approximation/model.hpp"

#include <cmath>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/simd/kernels.hpp"

namespace qmhd {

namespace {

VectorField zero_like(const Grid& g) { return VectorField(g); }

VectorField induction_from(const Spectral& sp, const ScalarField& nu, const VectorField& u,
                           const VectorField& b) {
  ScalarField e = sp.emf(u, b);
  e -= sp.product(nu, sp.curl2(b));
  return sp.curl_scalar(e);
}

}  // namespace

VectorField MomentumForces::total() const {
  VectorField f = convection;
  f += pressure;
  f += quantum;
  f += hyper;
  f += viscous;
  f += epsilon;
  f += lorentz;
  return f;
}

Model::Model(const Grid& grid, const ConstitutiveParams& constitutive, const RegularizationParams& reg)
    : spectral_(grid), galerkin_(spectral_, reg.n_modes), constitutive_(constitutive), reg_(reg) {
  constitutive_.validate();
  reg_.validate();
}

MaterialFields Model::materials(const ScalarField& n) const {
  const ConstitutiveParams& p = constitutive_;
  auto dealiased = [&](auto law_fn) { return spectral_.dealias(n.map([&](double v) { return law_fn(v, p); })); };
  MaterialFields m;
  m.pressure = dealiased([](double v, const ConstitutiveParams& q) {
    return law::pressure(v, q) + law::cold_pressure(v, q);
  });
  m.pressure_deriv = dealiased([](double v, const ConstitutiveParams& q) {
    return law::pressure_deriv(v, q) + law::cold_pressure_deriv(v, q);
  });
  m.enthalpy_deriv = dealiased([](double v, const ConstitutiveParams& q) {
    return law::enthalpy_deriv(v, q) + law::enthalpy_cold_deriv(v, q);
  });
  m.mu = dealiased(law::shear_viscosity);
  m.lambda_visc = dealiased(law::bulk_viscosity);
  m.nu_b = dealiased(law::resistivity);
  m.phi = dealiased(law::dispersion);
  m.phi_deriv = n.map([&](double v) { return law::dispersion_deriv(v, p); });
  return m;
}

ScalarField Model::continuity_rhs(const ScalarField& n, const VectorField& u) const {
  ScalarField rhs = spectral_.div(spectral_.product(n, u));
  rhs *= -1.0;
  if (reg_.epsilon > 0.0) rhs.add_scaled(reg_.epsilon, spectral_.laplacian(n));
  return rhs;
}

VectorField Model::induction_rhs(const ScalarField& n, const VectorField& u, const VectorField& b) const {
  const ScalarField nu = spectral_.dealias(n.map([&](double v) { return law::resistivity(v, constitutive_); }));
  return induction_from(spectral_, nu, u, b);
}

Coefficients Model::mass_apply(const ScalarField& n, std::span<const double> v) const {
  const VectorField field = galerkin_.synthesize(v);
  return galerkin_.project(VectorField{pointwise(n, field.x), pointwise(n, field.y)});
}

MassSolveResult Model::mass_solve(const ScalarField& n, std::span<const double> rhs, double tol, int max_iters,
                                  double density_floor) const {
  const double n_min = n.min();
  if (!(n_min >= density_floor)) {
    std::ostringstream os;
    os << "mass operator: density minimum " << n_min << " below floor " << density_floor;
    throw PositivityError(os.str());
  }
  const auto& k = simd::active_kernels();
  const double n_mean = spectral_.integral(n) / (4.0 * M_PI * M_PI);
  const double inv_mean = 1.0 / n_mean;

  MassSolveResult result;
  const std::size_t dim = rhs.size();
  result.v.assign(dim, 0.0);
  const double rhs_norm = std::sqrt(k.dot(rhs, rhs));
  if (rhs_norm == 0.0) return result;

  // Start from the mean-density solution.
  for (std::size_t i = 0; i < dim; ++i) result.v[i] = rhs[i] * inv_mean;
  Coefficients r(rhs.begin(), rhs.end());
  {
    const Coefficients av = mass_apply(n, result.v);
    k.axpy(-1.0, av, r);
  }
  Coefficients z(dim);
  for (std::size_t i = 0; i < dim; ++i) z[i] = r[i] * inv_mean;
  Coefficients p = z;
  double rz = k.dot(r, z);
  double r_norm = std::sqrt(k.dot(r, r));
  int it = 0;
  while (r_norm > tol * rhs_norm && it < max_iters) {
    const Coefficients ap = mass_apply(n, p);
    const double alpha = rz / k.dot(p, ap);
    k.axpy(alpha, p, result.v);
    k.axpy(-alpha, ap, r);
    for (std::size_t i = 0; i < dim; ++i) z[i] = r[i] * inv_mean;
    const double rz_next = k.dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    k.lincomb(z, beta, p, p);
    r_norm = std::sqrt(k.dot(r, r));
    ++it;
  }
  result.iterations = it;
  result.relative_residual = r_norm / rhs_norm;
  if (r_norm > tol * rhs_norm) {
    std::ostringstream os;
    os << "mass solve: no convergence after " << it << " iterations, relative residual "
       << result.relative_residual;
    throw IterationLimitError(os.str(), result.relative_residual);
  }
  return result;
}

MomentumForces Model::momentum_forces(const VectorField& u_adv, const VectorField& u_n, const ScalarField& n,
                                      const VectorField& b) const {
  return momentum_forces(u_adv, u_n, n, b, materials(n));
}

MomentumForces Model::momentum_forces(const VectorField& u_adv, const VectorField& u_n, const ScalarField& n,
                                      const VectorField& b, const MaterialFields& mat) const {
  const Spectral& sp = spectral_;
  const Grid& g = grid();
  MomentumForces f;

  // -div(n u_adv (x) u_n)
  {
    const VectorField m = sp.product(n, u_adv);
    ScalarField fx = sp.div(VectorField{sp.product(m.x, u_n.x), sp.product(m.y, u_n.x)});
    ScalarField fy = sp.div(VectorField{sp.product(m.x, u_n.y), sp.product(m.y, u_n.y)});
    fx *= -1.0;
    fy *= -1.0;
    f.convection = VectorField{std::move(fx), std::move(fy)};
  }

  // -n grad(H' + H_c')
  f.pressure = sp.product(n, sp.grad(mat.enthalpy_deriv));
  f.pressure *= -1.0;

  // (hbar^2/2) n grad(phi' Lap phi)
  const double hbar = constitutive_.hbar;
  if (hbar > 0.0) {
    const ScalarField q = sp.product(mat.phi_deriv, sp.laplacian(mat.phi));
    f.quantum = sp.product(n, sp.grad(q));
    f.quantum *= 0.5 * hbar * hbar;
  } else {
    f.quantum = zero_like(g);
  }

  // lambda n Lap^(2s+1)(n u) + lambda n grad Lap^(2s+1) n
  if (reg_.lambda_reg > 0.0) {
    const int order = 2 * reg_.s + 1;
    const VectorField h1 = sp.hyper(sp.product(n, u_n), order);
    const VectorField h2 = sp.grad(sp.hyper(n, order));
    f.hyper = sp.product(n, h1 + h2);
    f.hyper *= reg_.lambda_reg;
  } else {
    f.hyper = zero_like(g);
  }

  // 2 div(mu D(u)) + grad(lambda(n) div u)
  {
    const TensorField d = sp.sym_grad(u_n);
    const ScalarField sxy = sp.product(mat.mu, d.xy);
    VectorField visc{sp.div(VectorField{sp.product(mat.mu, d.xx), sxy}),
                     sp.div(VectorField{sxy, sp.product(mat.mu, d.yy)})};
    visc *= 2.0;
    visc += sp.grad(sp.product(mat.lambda_visc, sp.div(u_n)));
    f.viscous = std::move(visc);
  }

  f.epsilon = reg_.epsilon > 0.0 ? epsilon_force(n, u_adv) : zero_like(g);

  f.lorentz = sp.lorentz(b);
  return f;
}

VectorField Model::epsilon_force(const ScalarField& n, const VectorField& u) const {
  const Spectral& sp = spectral_;
  const VectorField gn = sp.grad(n);
  const ScalarField lap = sp.laplacian(n);
  const TensorField gu = sp.grad(u);
  auto component = [&](const ScalarField& ui, const ScalarField& dx, const ScalarField& dy) {
    ScalarField c = pointwise(gn.x, dx) + pointwise(gn.y, dy);
    c += sp.div(VectorField{pointwise(gn.x, ui), pointwise(gn.y, ui)});
    c -= pointwise(lap, ui);
    return sp.dealias(c);
  };
  VectorField f{component(u.x, gu.xx, gu.xy), component(u.y, gu.yx, gu.yy)};
  f *= -0.5 * reg_.epsilon;
  return f;
}

Coefficients Model::momentum_operator(const VectorField& u_adv, const VectorField& u_n, const ScalarField& n,
                                      const VectorField& b) const {
  return galerkin_.project(momentum_forces(u_adv, u_n, n, b).total());
}

StateDerivative Model::rhs(const State& state, const SolverOptions& options) const {
  const double n_min = state.n.min();
  if (!(n_min >= options.density_floor)) {
    std::ostringstream os;
    os << "density minimum " << n_min << " fell below floor " << options.density_floor << " at t=" << state.t;
    throw PositivityError(os.str());
  }
  const MaterialFields mat = materials(state.n);
  const VectorField& u = state.u.field();
  StateDerivative d;
  d.n = continuity_rhs(state.n, u);
  d.b = induction_from(spectral_, mat.nu_b, u, state.b);
  if (options.frozen_velocity) {
    d.u.assign(galerkin_.dofs(), 0.0);
    return d;
  }
  Coefficients dual = galerkin_.project(momentum_forces(u, u, state.n, state.b, mat).total());
  const Coefficients transfer =
      galerkin_.project(VectorField{pointwise(d.n, u.x), pointwise(d.n, u.y)});
  simd::active_kernels().axpy(-1.0, transfer, dual);
  d.u = mass_solve(state.n, dual, options.mass_tol, options.mass_max_iters, options.density_floor).v;
  return d;
}

}  // namespace qmhd
