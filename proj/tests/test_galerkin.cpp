#include <doctest.h>

#include <cmath>
#include <random>

#include "qmhd/errors.hpp"
#include "qmhd/spectral/galerkin.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;

namespace {

Coefficients random_coeffs(std::mt19937_64& rng, std::size_t n) {
  Coefficients c(n);
  for (double& v : c) v = 2.0 * oracle::uniform01(rng) - 1.0;
  return c;
}

}  // namespace

TEST_CASE("mode ordering and bounds") {
  const Grid g(32, 32);
  const Spectral sp(g);
  const int max = GalerkinSpace::max_modes(g);
  CHECK(max > 100);
  CHECK_THROWS_AS(GalerkinSpace(sp, 0), ParameterError);
  CHECK_THROWS_AS(GalerkinSpace(sp, max + 1), ParameterError);
  const GalerkinSpace gs(sp, 5);
  CHECK(gs.modes()[0].kx == 0);
  CHECK(gs.modes()[0].ky == 0);
  // |k|^2 = 1 modes: (0,1), (1,0); then |k|^2 = 2: (1,-1), (1,1)
  CHECK(gs.modes()[1].kx == 0);
  CHECK(gs.modes()[1].ky == 1);
  CHECK(gs.modes()[2].kx == 1);
  CHECK(gs.modes()[2].ky == 0);
  CHECK(gs.modes()[3].ky == -1);
  CHECK(gs.modes()[4].ky == 1);
  CHECK(gs.dofs_per_component() == 9);
  CHECK(gs.dofs() == 18);
  CHECK(gs.max_wavenumber() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("basis is orthonormal under the discrete inner product") {
  const Grid g(16, 16);
  const Spectral sp(g);
  const GalerkinSpace gs(sp, 12);
  const std::size_t d = gs.dofs();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    Coefficients ei(d, 0.0);
    ei[i] = 1.0;
    const VectorField fi = gs.synthesize(ei);
    const Coefficients back = gs.project(fi);
    for (std::size_t j = 0; j < d; ++j) worst = std::max(worst, std::fabs(back[j] - (i == j ? 1.0 : 0.0)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("projection is an orthogonal projection") {
  const Grid g(32, 32);
  const Spectral sp(g);
  const GalerkinSpace gs(sp, 20);
  std::mt19937_64 rng(11);
  const VectorField f = oracle::random_trig_vector(g, rng, 8);
  const VectorField h = oracle::random_trig_vector(g, rng, 8);
  const VectorField pf = gs.projection(f);
  const VectorField ppf = gs.projection(pf);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max({worst, std::fabs(pf.x[i] - ppf.x[i]), std::fabs(pf.y[i] - ppf.y[i])});
  CHECK(worst <= 1e-13);
  CHECK(std::fabs(sp.inner(pf, h) - sp.inner(f, gs.projection(h))) <= 1e-11);
  // Parseval: coefficient norm equals the field norm
  const Coefficients c = gs.project(f);
  CHECK(norm(c) == doctest::Approx(sp.norm_l2(pf)).epsilon(1e-12));
}

TEST_CASE("velocity support stays inside the N-mode ball") {
  const Grid g(32, 32);
  const Spectral sp(g);
  const GalerkinSpace gs(sp, 9);
  std::mt19937_64 rng(12);
  const GalerkinVelocity v(gs, random_coeffs(rng, gs.dofs()));
  const Spectrum s = sp.forward(v.field().x);
  const double kmax2 = gs.max_wavenumber() * gs.max_wavenumber();
  double outside = 0.0;
  for (std::size_t i = 0; i < s.coeffs().size(); ++i)
    if (sp.k2(i) > kmax2 + 1e-9) outside = std::max(outside, std::abs(s[i]));
  CHECK(outside <= 1e-15);
  // Round trip through the field
  const GalerkinVelocity w = GalerkinVelocity::from_field(gs, v.field());
  for (std::size_t i = 0; i < gs.dofs(); ++i) CHECK(w.coefficients()[i] == doctest::Approx(v.coefficients()[i]));
  CHECK(v.norm() == doctest::Approx(sp.norm_l2(v.field())));
}

TEST_CASE("Fourier coefficients of the real basis") {
  const Grid g(16, 16);
  const Spectral sp(g);
  const GalerkinSpace gs(sp, 3);
  Coefficients c(gs.dofs(), 0.0);
  c[3] = 2.0;  // cosine of mode 2, x component
  const std::complex<double> fc = gs.fourier_coefficient(c, 0, 2);
  CHECK(fc.real() == doctest::Approx(2.0 * std::sqrt(2.0) / (4.0 * M_PI)));
  CHECK(fc.imag() == doctest::Approx(0.0));
  CHECK(std::abs(sp.forward(gs.synthesize(c).x)[sp.index_of(gs.modes()[2].kx, gs.modes()[2].ky)] - fc) <= 1e-15);
}
