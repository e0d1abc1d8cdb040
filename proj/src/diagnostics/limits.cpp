#include "qmhd/diagnostics/limits.hpp"

#include <cmath>

namespace qmhd {

namespace {

double max_abs(const VectorField& v) {
  return std::max({std::fabs(v.x.min()), std::fabs(v.x.max()), std::fabs(v.y.min()), std::fabs(v.y.max())});
}

double max_abs(const ScalarField& f) { return std::max(std::fabs(f.min()), std::fabs(f.max())); }

VectorField scaled_grad_product(const Spectral& sp, const ScalarField& n, const ScalarField& q, double c) {
  const VectorField gq = sp.grad(q);
  VectorField f{pointwise(n, gq.x), pointwise(n, gq.y)};
  f *= c;
  return f;
}

}  // namespace

Report LimitCaseResult::report() const {
  Report r;
  r.title = "limit_cases";
  r.add("alpha_one_gap", alpha_one_gap);
  r.add("alpha_half_identity_gap", alpha_half_identity_gap);
  r.add("alpha_half_ratio_literal", alpha_half_ratio);
  r.add("alpha_half_ratio_reduced_form", 1.0);
  r.add("alpha_half_ratio_residual", alpha_half_ratio_residual);
  return r;
}

LimitCaseResult limit_case_check(const ScalarField& n, const ConstitutiveParams& params) {
  LimitCaseResult out;
  const Grid& g = n.grid();
  ConstitutiveParams p = params;
  if (!(p.hbar > 0.0)) p.hbar = 1.0;
  const double c = 0.5 * p.hbar * p.hbar;
  RegularizationParams reg;
  reg.n_modes = 1;

  {
    p.alpha = 1.0;
    const Model m(g, p, reg);
    const Spectral& sp = m.spectral();
    const VectorField zero(g);
    const VectorField fq = m.momentum_forces(zero, zero, n, zero).quantum;
    VectorField ref = sp.product(n, sp.grad(sp.laplacian(n)));
    ref *= c;
    const double scale = max_abs(fq);
    out.alpha_one_gap = max_abs(fq - ref) / (scale > 0.0 ? scale : 1.0);
  }
  {
    p.alpha = 0.5;
    const Spectral sp(g);
    const ScalarField phi = n.map([&](double v) { return law::dispersion(v, p); });
    const ScalarField dphi = n.map([&](double v) { return law::dispersion_deriv(v, p); });
    const ScalarField literal = pointwise(dphi, sp.laplacian(phi));
    const ScalarField root = n.map([](double v) { return std::sqrt(v); });
    const ScalarField lap_root = sp.laplacian(root);
    ScalarField closed(g);
    for (std::size_t i = 0; i < closed.size(); ++i) closed[i] = lap_root[i] / (2.0 * root[i]);
    const double scale = max_abs(closed);
    out.alpha_half_identity_gap = max_abs(literal - closed) / (scale > 0.0 ? scale : 1.0);

    ScalarField bohm(g);
    for (std::size_t i = 0; i < bohm.size(); ++i) bohm[i] = lap_root[i] / root[i];
    const VectorField f = scaled_grad_product(sp, n, literal, c);
    const VectorField reduced = scaled_grad_product(sp, n, bohm, c);
    const double gg = sp.inner(reduced, reduced);
    if (gg > 0.0) {
      out.alpha_half_ratio = sp.inner(f, reduced) / gg;
      VectorField r = f;
      r.add_scaled(-out.alpha_half_ratio, reduced);
      const double ff = sp.inner(f, f);
      out.alpha_half_ratio_residual = ff > 0.0 ? std::sqrt(sp.inner(r, r) / ff) : 0.0;
    }
  }
  return out;
}

}  // namespace qmhd
