#include "qmhd/diagnostics/weak.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qmhd/verify/oracles.hpp"

namespace qmhd {

namespace {

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double rms_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

ScalarField dot(const VectorField& a, const VectorField& b) { return pointwise(a.x, b.x) + pointwise(a.y, b.y); }
ScalarField contract(const TensorField& a, const TensorField& b) {
  return pointwise(a.xx, b.xx) + pointwise(a.xy, b.xy) + pointwise(a.yx, b.yx) + pointwise(a.yy, b.yy);
}

struct TimeWeight {
  double t0, span, a;
  int m;
  double operator()(double t) const {
    const double tau = (t - t0) / span;
    return std::pow(1.0 - tau, 3) * (1.0 + a * std::sin(M_PI * m * tau));
  }
};

// Five-point Gauss-Legendre on [0, 1].
constexpr double kNodes[5] = {0.04691007703066800, 0.23076534494715845, 0.5, 0.76923465505284155,
                              0.95308992296933200};
constexpr double kWeights[5] = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                                0.23931433524968324, 0.11846344252809454};

struct ScalarTest {
  ScalarField psi, lap;
  VectorField grad;
};
struct VectorTest {
  VectorField psi;
  TensorField grad;
  ScalarField div, curl;
};

// Spatial pairings of one state with one test function.
struct Pairing {
  double g_cont, w_cont;
  double g_mom, w_mom, extra;
  double g_ind, w_ind, w_ind_grad;
};

}  // namespace

double WeakResidualReport::max_continuity() const { return max_of(continuity); }
double WeakResidualReport::max_momentum() const { return max_of(momentum); }
double WeakResidualReport::max_induction() const { return max_of(induction); }
double WeakResidualReport::rms_continuity() const { return rms_of(continuity); }
double WeakResidualReport::rms_momentum() const { return rms_of(momentum); }
double WeakResidualReport::rms_induction() const { return rms_of(induction); }

double WeakResidualReport::induction_form_gap() const {
  double g = 0.0;
  for (std::size_t i = 0; i < induction.size(); ++i) g = std::max(g, std::fabs(induction[i] - induction_grad_form[i]));
  return g;
}

Report WeakResidualReport::report() const {
  Report r;
  r.title = "weak_residuals";
  r.add("battery_seed", static_cast<long>(seed));
  r.add("battery", static_cast<long>(battery));
  r.add("continuity_max", max_continuity());
  r.add("continuity_rms", rms_continuity());
  r.add("momentum_max", max_momentum());
  r.add("momentum_rms", rms_momentum());
  r.add("induction_max", max_induction());
  r.add("induction_rms", rms_induction());
  r.add("induction_form_gap", induction_form_gap());
  r.add("regularization_extra", regularization_extra);
  r.add("max_time_gap", max_time_gap);
  for (std::size_t i = 0; i < warnings.size(); ++i) r.add("warning_" + std::to_string(i), warnings[i]);
  return r;
}

WeakResidualReport weak_residuals(const Model& model, const std::vector<State>& trajectory, std::uint64_t seed,
                                  int battery) {
  if (trajectory.size() < 2) throw std::invalid_argument("weak residuals need at least two stored states");
  const Spectral& sp = model.spectral();
  const Grid& g = model.grid();
  const ConstitutiveParams& p = model.constitutive();
  const RegularizationParams& reg = model.regularization();
  const double t0 = trajectory.front().t;
  const double span = trajectory.back().t - t0;
  if (!(span > 0.0)) throw std::invalid_argument("trajectory spans no time");

  WeakResidualReport out;
  out.seed = seed;
  out.battery = battery;
  for (std::size_t k = 0; k + 1 < trajectory.size(); ++k)
    out.max_time_gap = std::max(out.max_time_gap, trajectory[k + 1].t - trajectory[k].t);
  if (out.max_time_gap > 0.25 * span)
    out.warnings.push_back("cadence too coarse: sample gap exceeds a quarter of the time span");

  std::mt19937_64 rng(seed);
  std::vector<TimeWeight> chi;
  std::vector<ScalarTest> st;
  std::vector<VectorTest> mt, bt;
  auto vector_test = [&](const VectorField& psi) {
    return VectorTest{psi, sp.grad(psi), sp.div(psi), sp.curl2(psi)};
  };
  for (int j = 0; j < battery; ++j) {
    const double a = oracle::uniform01(rng) - 0.5;
    const int m = 1 + static_cast<int>(3.0 * oracle::uniform01(rng));
    chi.push_back(TimeWeight{t0, span, a, m});
    const ScalarField s = oracle::random_trig(g, rng, 2);
    st.push_back(ScalarTest{s, sp.laplacian(s), sp.grad(s)});
    mt.push_back(vector_test(GalerkinVelocity::from_field(model.galerkin(), oracle::random_trig_vector(g, rng, 2)).field()));
    bt.push_back(vector_test(oracle::random_trig_vector(g, rng, 2)));
  }

  const double c_q = 0.5 * p.hbar * p.hbar;
  const bool regularized = reg.epsilon > 0.0 || reg.lambda_reg > 0.0;
  std::vector<std::vector<Pairing>> pair(trajectory.size(), std::vector<Pairing>(battery));
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const State& s = trajectory[k];
    const ScalarField& n = s.n;
    const VectorField& u = s.u.field();
    const VectorField& b = s.b;
    const MaterialFields mat = model.materials(n);
    const VectorField mom{pointwise(n, u.x), pointwise(n, u.y)};
    const TensorField flux{pointwise(mom.x, u.x), pointwise(mom.x, u.y), pointwise(mom.y, u.x), pointwise(mom.y, u.y)};
    const TensorField du = sp.sym_grad(u);
    const TensorField visc{pointwise(mat.mu, du.xx), pointwise(mat.mu, du.xy), pointwise(mat.mu, du.yx),
                           pointwise(mat.mu, du.yy)};
    const ScalarField bulk = pointwise(mat.lambda_visc, sp.div(u));
    const VectorField grad_n = sp.grad(n);
    const ScalarField q = sp.product(mat.phi_deriv, sp.laplacian(mat.phi));
    const VectorField lorentz = sp.lorentz(b);
    VectorField extra(g);
    if (regularized) {
      const MomentumForces f = model.momentum_forces(u, u, n, b, mat);
      extra = f.hyper + f.epsilon;
    }
    const ScalarField emf = pointwise(u.x, b.y) - pointwise(u.y, b.x);
    const ScalarField res = pointwise(mat.nu_b, sp.curl2(b));
    const TensorField gb = sp.grad(b);
    const TensorField nu_gb{pointwise(mat.nu_b, gb.xx), pointwise(mat.nu_b, gb.xy), pointwise(mat.nu_b, gb.yx),
                            pointwise(mat.nu_b, gb.yy)};

    for (int j = 0; j < battery; ++j) {
      Pairing& pr = pair[k][j];
      const ScalarTest& cs = st[j];
      pr.g_cont = sp.inner(n, cs.psi);
      pr.w_cont = sp.integral(dot(mom, cs.grad));
      if (reg.epsilon > 0.0) pr.w_cont += reg.epsilon * sp.inner(n, cs.lap);

      const VectorTest& vm = mt[j];
      pr.g_mom = sp.inner(mom, vm.psi);
      double w = sp.integral(contract(flux, vm.grad)) + sp.inner(mat.pressure, vm.div);
      if (c_q > 0.0) w -= c_q * sp.integral(pointwise(q, dot(grad_n, vm.psi) + pointwise(n, vm.div)));
      w -= 2.0 * sp.integral(contract(visc, vm.grad));
      w -= sp.inner(bulk, vm.div);
      w += sp.inner(lorentz, vm.psi);
      pr.extra = regularized ? sp.inner(extra, vm.psi) : 0.0;
      pr.w_mom = w + pr.extra;

      const VectorTest& vb = bt[j];
      pr.g_ind = sp.inner(b, vb.psi);
      const double e_part = sp.inner(emf, vb.curl);
      pr.w_ind = e_part - sp.inner(res, vb.curl);
      pr.w_ind_grad = e_part - sp.integral(contract(nu_gb, vb.grad));
    }
  }

  for (int j = 0; j < battery; ++j) {
    double rc = 0.0, rm = 0.0, ri = 0.0, rig = 0.0, extra = 0.0;
    for (std::size_t k = 0; k + 1 < trajectory.size(); ++k) {
      const double ta = trajectory[k].t;
      const double h = trajectory[k + 1].t - ta;
      double w_int = 0.0, a_left = 0.0, a_right = 0.0;
      for (int q = 0; q < 5; ++q) {
        const double c = chi[j](ta + kNodes[q] * h) * kWeights[q] * h;
        w_int += c;
        a_left += c * (1.0 - kNodes[q]);
        a_right += c * kNodes[q];
      }
      const Pairing& l = pair[k][j];
      const Pairing& r = pair[k + 1][j];
      // int chi' g_h = boundary terms - slope * int chi; the boundary terms cancel chi(0) g(0).
      rc += -(r.g_cont - l.g_cont) / h * w_int + l.w_cont * a_left + r.w_cont * a_right;
      rm += -(r.g_mom - l.g_mom) / h * w_int + l.w_mom * a_left + r.w_mom * a_right;
      ri += -(r.g_ind - l.g_ind) / h * w_int + l.w_ind * a_left + r.w_ind * a_right;
      rig += -(r.g_ind - l.g_ind) / h * w_int + l.w_ind_grad * a_left + r.w_ind_grad * a_right;
      extra += l.extra * a_left + r.extra * a_right;
    }
    out.continuity.push_back(std::fabs(rc));
    out.momentum.push_back(std::fabs(rm));
    out.induction.push_back(std::fabs(ri));
    out.induction_grad_form.push_back(std::fabs(rig));
    out.regularization_extra = std::max(out.regularization_extra, std::fabs(extra));
  }
  return out;
}

}  // namespace qmhd
