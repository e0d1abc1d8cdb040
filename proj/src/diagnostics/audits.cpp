#include "qmhd/diagnostics/audits.hpp"

#include <cmath>
#include <stdexcept>

namespace qmhd {

namespace {

ScalarField square(const VectorField& v) { return pointwise(v.x, v.x) + pointwise(v.y, v.y); }

template <class Law>
ScalarField eval(const ScalarField& n, const ConstitutiveParams& p, Law law_fn) {
  return n.map([&](double v) { return law_fn(v, p); });
}

double lp_norm(const Spectral& sp, const ScalarField& n, double power) {
  return std::pow(sp.integral(n.map([&](double v) { return std::pow(v, power); })), 1.0 / power);
}

}  // namespace

NamedValues apriori_norms(const Model& model, const State& state) {
  const Spectral& sp = model.spectral();
  const ConstitutiveParams& p = model.constitutive();
  const RegularizationParams& reg = model.regularization();
  const ScalarField& n = state.n;
  const VectorField& u = state.u.field();

  NamedValues out;
  out.emplace_back("N_n_gamma", lp_norm(sp, n, p.gamma));
  out.emplace_back("N_n_gamma_minus", lp_norm(sp, n, p.gamma_minus));
  out.emplace_back("N_grad_phi", std::sqrt(sp.seminorm_sq(eval(n, p, law::dispersion), 1)));
  const ScalarField cold = eval(n, p, [](double v, const ConstitutiveParams& q) {
    return law::cold_pressure_deriv(v, q) / v;
  });
  out.emplace_back("N_eps_cold", std::sqrt(reg.epsilon * sp.integral(pointwise(cold, square(sp.grad(n))))));
  out.emplace_back("N_sqrt_n_u", std::sqrt(sp.integral(pointwise(n, square(u)))));
  const TensorField d = sp.sym_grad(u);
  const ScalarField dd = pointwise(d.xx, d.xx) + pointwise(d.xy, d.xy) + pointwise(d.yx, d.yx) + pointwise(d.yy, d.yy);
  const ScalarField mu = eval(n, p, law::shear_viscosity);
  out.emplace_back("N_sqrt_mu_Du", std::sqrt(sp.integral(pointwise(mu, dd))));
  double lam_mom = 0.0, lam_den = 0.0;
  if (reg.lambda_reg > 0.0) {
    const int m = 2 * reg.s + 1;
    const VectorField nu = sp.product(n, u);
    lam_mom = std::sqrt(reg.lambda_reg * (sp.seminorm_sq(nu.x, m) + sp.seminorm_sq(nu.y, m)));
    lam_den = std::sqrt(reg.lambda_reg * sp.seminorm_sq(n, m));
  }
  out.emplace_back("N_lambda_momentum", lam_mom);
  out.emplace_back("N_lambda_density", lam_den);
  out.emplace_back("N_lap_mu", std::sqrt(sp.seminorm_sq(mu, 2)));
  out.emplace_back("N_grad_inv_sqrt_n", std::sqrt(sp.seminorm_sq(n.map([](double v) { return 1.0 / std::sqrt(v); }), 1)));
  out.emplace_back("N_inv_n_sup", 1.0 / n.min());
  return out;
}

Report BalanceCheck::report(const std::string& title) const {
  Report r;
  r.title = title;
  r.add("samples", static_cast<long>(residual.size()));
  r.add("spacing", spacing);
  r.add("max_abs_residual", max_abs);
  r.add("dissipation_scale", scale);
  r.add("growth_events", static_cast<long>(growth_times.size()));
  if (growth()) r.add("first_growth_time", growth_times.front());
  return r;
}

BalanceCheck balance_residual(const DiagnosticsSeries& series, const std::string& functional,
                              const std::string& dissipation, double growth_tol) {
  BalanceCheck out;
  const std::vector<double> t = series.times();
  const std::vector<double> f = series.column(functional);
  const std::vector<double> d = series.column(dissipation);
  for (std::size_t k = 0; k + 1 < f.size(); ++k)
    if (f[k + 1] - f[k] > growth_tol * std::max(1.0, std::fabs(f[k]))) out.growth_times.push_back(t[k + 1]);
  for (double v : d) out.scale = std::max(out.scale, std::fabs(v));
  if (t.size() < 2) return out;

  const double h = t[1] - t[0];
  std::size_t m = t.size();
  if (m > 2 && std::fabs((t[m - 1] - t[m - 2]) - h) > 1e-9 * h) --m;
  for (std::size_t k = 1; k + 1 < m; ++k)
    if (std::fabs((t[k + 1] - t[k]) - h) > 1e-9 * h)
      throw std::invalid_argument("balance residual needs uniformly spaced samples");
  out.spacing = h;

  if (m >= 4) {
    for (std::size_t k = 1; k + 2 < m; ++k) {
      const double df = (f[k - 1] - 27.0 * f[k] + 27.0 * f[k + 1] - f[k + 2]) / (24.0 * h);
      const double dm = (-d[k - 1] + 9.0 * d[k] + 9.0 * d[k + 1] - d[k + 2]) / 16.0;
      out.t.push_back(0.5 * (t[k] + t[k + 1]));
      out.residual.push_back(df + dm);
    }
  } else {
    for (std::size_t k = 0; k + 1 < m; ++k) {
      out.t.push_back(0.5 * (t[k] + t[k + 1]));
      out.residual.push_back((f[k + 1] - f[k]) / h + 0.5 * (d[k] + d[k + 1]));
    }
  }
  for (double r : out.residual) out.max_abs = std::max(out.max_abs, std::fabs(r));
  return out;
}

BalanceCheck check_energy_inequality(const DiagnosticsSeries& series, double growth_tol) {
  return balance_residual(series, "E_total", "D_total", growth_tol);
}

BalanceCheck bd_identity_residual(const DiagnosticsSeries& series) {
  return balance_residual(series, "BD_functional", "BD_dissipation", INFINITY);
}

double refinement_order(const BalanceCheck& coarse, const BalanceCheck& fine) {
  return std::log2(coarse.max_abs / fine.max_abs);
}

Report check_lorentz_split(const DiagnosticsSeries& series) {
  Report r;
  r.title = "lorentz_split";
  const std::vector<double> lhs = series.column("L_split_lhs");
  const std::vector<double> rhs = series.column("L_split_rhs");
  long violations = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (lhs[k] > rhs[k] * (1.0 + 1e-12) + 1e-300) ++violations;
    if (rhs[k] > 0.0) worst = std::max(worst, lhs[k] / rhs[k]);
  }
  r.add("samples", static_cast<long>(lhs.size()));
  r.add("violations", violations);
  r.add("max_ratio", worst);
  r.check("holds", violations == 0);
  return r;
}

Report apriori_bounds_report(const DiagnosticsSeries& series) {
  Report r;
  r.title = "apriori_bounds";
  const std::vector<double> t = series.times();
  bool finite = true;
  for (const std::string& c : series.columns()) {
    if (c.rfind("N_", 0) != 0) continue;
    const std::vector<double> v = series.column(c);
    double sup = 0.0;
    for (double x : v) {
      finite = finite && std::isfinite(x);
      sup = std::max(sup, std::fabs(x));
    }
    r.add("sup_" + c.substr(2), sup);
    if (c == "N_eps_cold" || c == "N_sqrt_mu_Du" || c == "N_lambda_momentum") {
      double acc = 0.0;
      for (std::size_t k = 0; k + 1 < v.size(); ++k) acc += 0.5 * (t[k + 1] - t[k]) * (v[k] * v[k] + v[k + 1] * v[k + 1]);
      r.add("l2t_" + c.substr(2), std::sqrt(acc));
    }
  }
  r.check("finite", finite);
  return r;
}

}  // namespace qmhd
