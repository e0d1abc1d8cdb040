#include "qmhd/io/initial.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/verify/oracles.hpp"

namespace qmhd {

namespace {

struct TrigMode {
  int kx, ky;
  double a, b;
};

// Real trigonometric polynomial over the half plane of |k| <= kmax.
struct TrigSeries {
  std::vector<TrigMode> modes;

  static TrigSeries draw(std::mt19937_64& rng, int kmax, double decay) {
    TrigSeries s;
    for (int kx = 0; kx <= kmax; ++kx)
      for (int ky = -kmax; ky <= kmax; ++ky) {
        const int k2 = kx * kx + ky * ky;
        if (k2 == 0 || k2 > kmax * kmax || (kx == 0 && ky < 0)) continue;
        const double w = std::pow(1.0 + k2, -0.5 * decay);
        const double a = 2.0 * oracle::uniform01(rng) - 1.0;
        const double b = 2.0 * oracle::uniform01(rng) - 1.0;
        s.modes.push_back({kx, ky, w * a, w * b});
      }
    return s;
  }

  /// Bound on |f| over the torus.
  double sup_bound() const {
    double m = 0.0;
    for (const TrigMode& t : modes) m += std::fabs(t.a) + std::fabs(t.b);
    return m;
  }

  /// Bound on |grad f|.
  double grad_bound() const {
    double m = 0.0;
    for (const TrigMode& t : modes) m += std::hypot(t.kx, t.ky) * (std::fabs(t.a) + std::fabs(t.b));
    return m;
  }

  ScalarField eval(const Grid& g, double scale) const {
    return ScalarField::from_function(g, [&](double x, double y) {
      double v = 0.0;
      for (const TrigMode& t : modes) {
        const double ph = t.kx * x + t.ky * y;
        v += t.a * std::cos(ph) + t.b * std::sin(ph);
      }
      return scale * v;
    });
  }
};

double safe_ratio(double a, double b) { return b > 0.0 ? a / b : 0.0; }

}  // namespace

Report finite_energy_audit(const Model& model, const State& state) {
  const Spectral& sp = model.spectral();
  const ConstitutiveParams& p = model.constitutive();
  const ScalarField& n = state.n;
  Report r;
  r.title = "initial_condition";
  const EnergyBudget e = total_energy(model, state);
  const ScalarField mu = n.map([&](double v) { return law::shear_viscosity(v, p); });
  const VectorField gmu = sp.grad(mu);
  ScalarField gmu_sq = pointwise(gmu.x, gmu.x) + pointwise(gmu.y, gmu.y);
  for (std::size_t i = 0; i < gmu_sq.size(); ++i) gmu_sq[i] /= n[i];
  const ScalarField phi = n.map([&](double v) { return law::dispersion(v, p); });
  const VectorField u = state.u.field();
  const ScalarField nu2 = pointwise(n, pointwise(u.x, u.x) + pointwise(u.y, u.y));

  const std::vector<std::pair<std::string, double>> values = {
      {"ic_energy", e.total},
      {"ic_mass", sp.integral(n)},
      {"ic_n_min", n.min()},
      {"ic_n_max", n.max()},
      {"ic_kinetic", sp.integral(nu2)},
      {"ic_internal", e.internal},
      {"ic_cold", e.cold},
      {"ic_grad_mu_over_sqrt_n", sp.integral(gmu_sq)},
      {"ic_grad_phi", sp.inner(sp.grad(phi), sp.grad(phi))},
      {"ic_magnetic", sp.inner(state.b, state.b)},
      {"ic_div_b_l2", sp.norm_l2(sp.div(state.b))},
  };
  bool finite = true;
  for (const auto& [k, v] : values) {
    r.add(k, v);
    finite = finite && std::isfinite(v);
  }
  r.check("finite", finite);
  return r;
}

InitialCondition generate_ic(const ICSpec& spec, const Model& model, double density_floor) {
  const Grid& g = model.grid();
  const Spectral& sp = model.spectral();
  const double nbar = spec.mean_density;
  std::mt19937_64 rng(spec.seed);

  ScalarField n(g, nbar);
  VectorField u(g);
  ScalarField potential(g);

  if (spec.kind == "constant") {
  } else if (spec.kind == "smooth-random") {
    const TrigSeries rho = TrigSeries::draw(rng, spec.kmax, spec.decay);
    const TrigSeries ux = TrigSeries::draw(rng, spec.kmax, spec.decay);
    const TrigSeries uy = TrigSeries::draw(rng, spec.kmax, spec.decay);
    const TrigSeries a = TrigSeries::draw(rng, spec.kmax, spec.decay);
    n += rho.eval(g, nbar * spec.amplitude * safe_ratio(1.0, rho.sup_bound()));
    u = VectorField(ux.eval(g, spec.velocity_amplitude * safe_ratio(1.0, ux.sup_bound())),
                    uy.eval(g, spec.velocity_amplitude * safe_ratio(1.0, uy.sup_bound())));
    potential = a.eval(g, spec.field_amplitude * safe_ratio(1.0, a.grad_bound()));
  } else if (spec.kind == "density-bump") {
    const double w2 = spec.width * spec.width;
    n = sp.dealias(ScalarField::from_function(g, [&](double x, double y) {
      return nbar * (1.0 + spec.amplitude * std::exp((std::cos(x - M_PI) + std::cos(y - M_PI) - 2.0) / w2));
    }));
  } else if (spec.kind == "orszag-tang-like") {
    n = ScalarField::from_function(
        g, [&](double x, double y) { return nbar * (1.0 + spec.amplitude * std::cos(x) * std::cos(y)); });
    u = VectorField(ScalarField::from_function(g, [&](double, double y) { return -spec.velocity_amplitude * std::sin(y); }),
                    ScalarField::from_function(g, [&](double x, double) { return spec.velocity_amplitude * std::sin(x); }));
    potential = ScalarField::from_function(
        g, [&](double x, double y) { return spec.field_amplitude * (std::cos(y) + 0.5 * std::cos(2.0 * x)); });
  } else {
    throw ConfigError("initial: unknown kind '" + spec.kind + "'");
  }

  InitialCondition ic;
  State& s = ic.state;
  s.n = std::move(n);
  s.u = GalerkinVelocity::from_field(model.galerkin(), u);
  s.b = sp.curl_scalar(potential);
  s.b.x += ScalarField(g, spec.mean_bx);
  s.b.y += ScalarField(g, spec.mean_by);

  if (!(s.n.min() >= density_floor)) {
    std::ostringstream os;
    os << "initial: generated density minimum " << s.n.min() << " is below the floor " << density_floor
       << "; lower the amplitude or raise mean_density";
    throw ConfigError(os.str());
  }
  ic.audit = finite_energy_audit(model, s);
  ic.audit.add("kind", spec.kind);
  ic.audit.add("seed", static_cast<long>(spec.seed));
  if (!ic.audit.ok) throw ConfigError("initial: finite-energy functionals are not all finite");
  return ic;
}

}  // namespace qmhd
