#include "qmhd/diagnostics/budgets.hpp"

#include <cmath>
#include <sstream>

#include "qmhd/errors.hpp"

namespace qmhd {

namespace {

void require_positive(const ScalarField& n) {
  const double lo = n.min();
  if (!(lo > 0.0)) {
    std::ostringstream os;
    os << "budget evaluated at non-positive density (min " << lo << ")";
    throw SingularityError(os.str());
  }
}

ScalarField square(const VectorField& v) { return pointwise(v.x, v.x) + pointwise(v.y, v.y); }
ScalarField square(const TensorField& t) {
  return pointwise(t.xx, t.xx) + pointwise(t.xy, t.xy) + pointwise(t.yx, t.yx) + pointwise(t.yy, t.yy);
}
ScalarField dot(const VectorField& a, const VectorField& b) { return pointwise(a.x, b.x) + pointwise(a.y, b.y); }

template <class Law>
ScalarField eval(const ScalarField& n, const ConstitutiveParams& p, Law law_fn) {
  return n.map([&](double v) { return law_fn(v, p); });
}

// Shared pieces of both budgets.
struct Parts {
  MaterialFields mat;
  ScalarField q;  // phi' Lap phi
  VectorField nu_field;
  EnergyBudget energy;
};

Parts evaluate(const Model& model, const State& state) {
  require_positive(state.n);
  const Spectral& sp = model.spectral();
  const ConstitutiveParams& p = model.constitutive();
  const RegularizationParams& reg = model.regularization();
  const ScalarField& n = state.n;
  const VectorField& u = state.u.field();
  const VectorField& b = state.b;

  Parts out;
  out.mat = model.materials(n);
  const MaterialFields& mat = out.mat;
  EnergyBudget& e = out.energy;
  const double hbar2 = p.hbar * p.hbar;

  e.kinetic = 0.5 * sp.integral(pointwise(n, square(u)));
  e.internal = sp.integral(eval(n, p, law::enthalpy));
  e.cold = sp.integral(eval(n, p, law::enthalpy_cold));
  e.magnetic = 0.5 * sp.inner(b, b);
  if (p.hbar > 0.0) {
    e.quantum = 0.25 * hbar2 * sp.seminorm_sq(mat.phi, 1);
    out.q = sp.product(mat.phi_deriv, sp.laplacian(mat.phi));
  } else {
    out.q = ScalarField(n.grid());
  }

  e.visc_shear = 2.0 * sp.integral(pointwise(mat.mu, square(sp.sym_grad(u))));
  const ScalarField div_u = sp.div(u);
  e.visc_bulk = sp.integral(pointwise(mat.lambda_visc, pointwise(div_u, div_u)));
  const ScalarField j = sp.curl2(b);
  e.resistive = sp.integral(pointwise(mat.nu_b, pointwise(j, j)));

  out.nu_field = sp.product(n, u);
  if (reg.lambda_reg > 0.0) {
    const int m = 2 * reg.s + 1;
    e.hyper = 0.5 * reg.lambda_reg * sp.seminorm_sq(n, m);
    e.hyper_momentum = reg.lambda_reg * (sp.seminorm_sq(out.nu_field.x, m) + sp.seminorm_sq(out.nu_field.y, m));
    e.hyper_density = reg.lambda_reg * reg.epsilon * sp.seminorm_sq(n, m + 1);
  }
  if (reg.epsilon > 0.0) {
    // -eps int (H' + H_c') Lap n, equal to eps int (P' + P_c')/n |grad n|^2
    const ScalarField dh = eval(n, p, [](double v, const ConstitutiveParams& q) {
      return law::enthalpy_deriv(v, q) + law::enthalpy_cold_deriv(v, q);
    });
    e.eps_pressure = -reg.epsilon * sp.integral(pointwise(dh, sp.laplacian(n)));
    if (p.hbar > 0.0) e.eps_quantum = reg.epsilon * 0.5 * hbar2 * sp.integral(pointwise(out.q, sp.laplacian(n)));
  }
  e.total = e.kinetic + e.internal + e.cold + e.quantum + e.magnetic + e.hyper;
  return out;
}

}  // namespace

double EnergyBudget::dissipation() const {
  return visc_shear + visc_bulk + eps_pressure + resistive + hyper_momentum + hyper_density + eps_quantum;
}

NamedValues EnergyBudget::lines() const {
  return {{"E_kinetic", kinetic},
          {"E_internal", internal},
          {"E_cold", cold},
          {"E_quantum", quantum},
          {"E_magnetic", magnetic},
          {"E_hyper", hyper},
          {"E_total", total},
          {"D_visc_shear", visc_shear},
          {"D_visc_bulk", visc_bulk},
          {"D_eps_pressure", eps_pressure},
          {"D_resistive", resistive},
          {"D_hyper_momentum", hyper_momentum},
          {"D_hyper_density", hyper_density},
          {"D_eps_quantum", eps_quantum},
          {"D_total", dissipation()}};
}

EnergyBudget total_energy(const Model& model, const State& state) { return evaluate(model, state).energy; }

double BDBudget::left() const {
  return shear_antisym + quantum + resistive + pressure_drift + hyper_momentum + hyper_density + eps_pressure +
         eps_quantum;
}

double BDBudget::right() const {
  return lorentz_drift + hyper_drift + eps_mass + eps_drift_sq + eps_convect + eps_potential;
}

NamedValues BDBudget::lines() const {
  return {{"BD_functional", functional},
          {"BD_shear_antisym", shear_antisym},
          {"BD_quantum", quantum},
          {"BD_resistive", resistive},
          {"BD_pressure_drift", pressure_drift},
          {"BD_hyper_momentum", hyper_momentum},
          {"BD_hyper_density", hyper_density},
          {"BD_eps_pressure", eps_pressure},
          {"BD_eps_quantum", eps_quantum},
          {"BD_lorentz_drift", lorentz_drift},
          {"BD_hyper_drift", hyper_drift},
          {"BD_eps_mass", eps_mass},
          {"BD_eps_drift_sq", eps_drift_sq},
          {"BD_eps_convect", eps_convect},
          {"BD_eps_potential", eps_potential},
          {"BD_hyper_alternative", hyper_alternative},
          {"BD_dissipation", dissipation()}};
}

BDBudget bd_budget(const Model& model, const State& state) {
  const Parts parts = evaluate(model, state);
  const Spectral& sp = model.spectral();
  const ConstitutiveParams& p = model.constitutive();
  const RegularizationParams& reg = model.regularization();
  const ScalarField& n = state.n;
  const VectorField& u = state.u.field();
  const EnergyBudget& e = parts.energy;

  const VectorField grad_n = sp.grad(n);
  const ScalarField factor = eval(n, p, law::bd_potential_grad_factor);
  const VectorField w{pointwise(factor, grad_n.x), pointwise(factor, grad_n.y)};

  BDBudget bd;
  bd.functional = 0.5 * sp.integral(pointwise(n, square(u + w))) + e.internal + e.cold + e.quantum + e.magnetic +
                  e.hyper;

  bd.shear_antisym = 2.0 * sp.integral(pointwise(parts.mat.mu, square(sp.antisym_grad(u))));
  if (p.hbar > 0.0) bd.quantum = p.hbar * p.hbar * sp.integral(pointwise(parts.q, sp.laplacian(parts.mat.mu)));
  bd.resistive = e.resistive;
  // -<pressure force, w> on the grid; equals 2 int mu'(P'+P_c')|grad n|^2/n in the continuum
  bd.pressure_drift = sp.integral(dot(sp.product(n, sp.grad(parts.mat.enthalpy_deriv)), w));
  bd.hyper_momentum = e.hyper_momentum;
  bd.hyper_density = e.hyper_density;
  bd.eps_pressure = e.eps_pressure;
  bd.eps_quantum = e.eps_quantum;

  bd.lorentz_drift = sp.integral(dot(sp.lorentz(state.b), w));
  if (reg.lambda_reg > 0.0) {
    const int m = 2 * reg.s + 1;
    VectorField h = sp.hyper(parts.nu_field, m) + sp.grad(sp.hyper(n, m));
    bd.hyper_drift = reg.lambda_reg * sp.integral(dot(sp.product(n, h), w));
    const ScalarField mu_deriv = eval(n, p, law::shear_viscosity_deriv);
    bd.hyper_alternative = reg.lambda_reg * sp.integral(pointwise(
                                                pointwise(mu_deriv, sp.laplacian(parts.mat.mu)),
                                                sp.hyper(parts.mat.mu, reg.s)));
  }
  if (reg.epsilon > 0.0) {
    const double eps = reg.epsilon;
    const ScalarField lap_n = sp.laplacian(n);
    const ScalarField factor_lap = pointwise(factor, lap_n);
    bd.eps_mass = -eps * sp.integral(pointwise(sp.div(parts.nu_field), factor_lap));
    bd.eps_drift_sq = 0.5 * eps * sp.integral(pointwise(square(w), lap_n));
    bd.eps_convect = sp.integral(dot(model.epsilon_force(n, u), w));
    bd.eps_potential = eps * sp.integral(pointwise(n, dot(w, sp.grad(factor_lap))));
  }
  return bd;
}

LorentzSplit lorentz_split(const Model& model, const State& state, double weight) {
  require_positive(state.n);
  const Spectral& sp = model.spectral();
  const ConstitutiveParams& p = model.constitutive();
  LorentzSplit out;
  out.weight = weight > 0.0 ? weight : (model.regularization().epsilon > 0.0 ? model.regularization().epsilon : 1.0);
  const ScalarField& n = state.n;
  const VectorField gmu = sp.grad(eval(n, p, law::shear_viscosity));
  const ScalarField j = sp.curl2(state.b);
  const ScalarField cross = pointwise(gmu.x, state.b.y) - pointwise(gmu.y, state.b.x);
  const ScalarField inv_n = n.map([](double v) { return 1.0 / v; });
  out.lhs = std::fabs(2.0 * sp.integral(pointwise(pointwise(j, cross), inv_n)));
  const ScalarField jn = pointwise(j, inv_n);
  out.rhs = sp.integral(pointwise(jn, jn)) / out.weight + out.weight * sp.integral(pointwise(cross, cross));
  return out;
}

}  // namespace qmhd
