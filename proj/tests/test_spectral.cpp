#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/spectral/snapshot.hpp"
#include "qmhd/spectral/spectral.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;

namespace {

double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(const ScalarField& a) { return std::max(std::fabs(a.min()), std::fabs(a.max())); }

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(7, 8), ParameterError);
  CHECK_THROWS_AS(Grid(6, 6), ParameterError);
  const Grid g(16, 8);
  CHECK(g.size() == 128);
  CHECK(g.spectral_size() == 8 * 9);
  CHECK(g.cell_area() == doctest::Approx(4 * M_PI * M_PI / 128));
}

TEST_CASE("transform round trip") {
  const Grid g(32, 24);
  const Spectral sp(g);
  std::mt19937_64 rng(1);
  const ScalarField f = oracle::random_trig(g, rng, 6);
  CHECK(max_diff(sp.inverse(sp.forward(f)), f) <= 1e-13);
  // normalized coefficients: cos(2x + 3y) has c_(2,3) = 1/2
  const ScalarField c = ScalarField::from_function(g, [](double x, double y) { return std::cos(2 * x + 3 * y); });
  const Spectrum s = sp.forward(c);
  CHECK(std::abs(s[sp.index_of(2, 3)] - std::complex<double>(0.5, 0.0)) <= 1e-14);
}

TEST_CASE("derivatives are exact on trigonometric polynomials") {
  const Grid g(32, 32);
  const Spectral sp(g);
  const ScalarField f =
      ScalarField::from_function(g, [](double x, double y) { return std::sin(x) + 0.5 * std::cos(3 * x - 2 * y); });
  const ScalarField fx =
      ScalarField::from_function(g, [](double x, double y) { return std::cos(x) - 1.5 * std::sin(3 * x - 2 * y); });
  const ScalarField fy = ScalarField::from_function(g, [](double x, double y) { return std::sin(3 * x - 2 * y); });
  const ScalarField lap =
      ScalarField::from_function(g, [](double x, double y) { return -std::sin(x) - 6.5 * std::cos(3 * x - 2 * y); });
  CHECK(max_diff(sp.dx(f), fx) <= 1e-12);
  CHECK(max_diff(sp.dy(f), fy) <= 1e-12);
  CHECK(max_diff(sp.laplacian(f), lap) <= 1e-12);
  const VectorField gsin = sp.grad(ScalarField::from_function(g, [](double x, double) { return std::sin(x); }));
  CHECK(max_diff(gsin.x, ScalarField::from_function(g, [](double x, double) { return std::cos(x); })) <= 1e-13);
  CHECK(max_abs(gsin.y) <= 1e-13);
  CHECK(max_abs(sp.laplacian(ScalarField(g, 3.0))) == 0.0);
}

TEST_CASE("operator identities on random smooth fields") {
  const Grid g(32, 32);
  const Spectral sp(g);
  std::mt19937_64 rng(2);
  const ScalarField f = oracle::random_trig(g, rng, 8);
  const VectorField v = oracle::random_trig_vector(g, rng, 8);
  CHECK(max_diff(sp.div(sp.grad(f)), sp.laplacian(f)) <= 1e-11);
  CHECK(max_diff(sp.hyper(f, 1), sp.laplacian(f)) <= 1e-12);
  CHECK(max_diff(sp.dx(sp.dy(f)), sp.dy(sp.dx(f))) <= 1e-12);
  CHECK(max_diff(sp.hyper(f, 2), sp.laplacian(sp.laplacian(f))) <= 1e-9);
  // curl-form induction is solenoidal
  CHECK(max_abs(sp.div(sp.curl_scalar(f))) <= 1e-12);
  // integration by parts
  const double lhs = sp.integral(pointwise(f, sp.div(v)));
  const double rhs = -sp.inner(sp.grad(f), v);
  CHECK(std::fabs(lhs - rhs) <= 1e-11);
}

TEST_CASE("hyper-Laplacian eigenfunctions and Parseval") {
  const Grid g(32, 32);
  const Spectral sp(g);
  const ScalarField e = ScalarField::from_function(g, [](double x, double y) { return std::cos(2 * x + y); });
  const Spectrum se = sp.forward(e);
  for (int k = 1; k <= 3; ++k) {
    const Spectrum h = sp.hyper(se, k);
    const double factor = std::pow(-5.0, k);
    const std::size_t idx = sp.index_of(2, 1);
    CHECK(std::abs(h[idx] - factor * se[idx]) <= 1e-15 * std::fabs(factor));
    for (std::size_t i = 0; i < h.coeffs().size(); ++i)
      CHECK(std::abs(h[i] - std::pow(-sp.k2(i), k) * se[i]) <= 1e-12 * std::abs(h[i]) + 1e-300);
  }
  CHECK(max_diff(sp.hyper(e, 1), -5.0 * e) <= 1e-12);
  std::mt19937_64 rng(3);
  const ScalarField f = oracle::random_trig(g, rng, 6);
  CHECK(std::fabs(sp.parseval(sp.forward(f)) - sp.inner(f, f)) <= 1e-10 * sp.inner(f, f));
  // int |grad^3 f|^2 = int |grad Lap f|^2
  const double direct = sp.inner(sp.grad(sp.laplacian(f)), sp.grad(sp.laplacian(f)));
  CHECK(std::fabs(sp.seminorm_sq(f, 3) - direct) <= 1e-10 * direct);
}

TEST_CASE("MHD operators") {
  const Grid g(32, 32);
  const Spectral sp(g);
  std::mt19937_64 rng(4);
  const VectorField bu(g, 0.3, -1.2);
  const VectorField lz = sp.lorentz(bu);
  CHECK(max_abs(lz.x) == 0.0);
  CHECK(max_abs(lz.y) == 0.0);
  const VectorField u = oracle::random_trig_vector(g, rng, 5);
  CHECK(max_abs(sp.emf(u, u)) <= 1e-14);
  // curl2 of a gradient vanishes
  CHECK(max_abs(sp.curl2(sp.grad(oracle::random_trig(g, rng, 5)))) <= 1e-12);
}

TEST_CASE("gradient decomposition and dealiasing") {
  const Grid g(32, 32);
  const Spectral sp(g);
  std::mt19937_64 rng(5);
  const VectorField u = oracle::random_trig_vector(g, rng, 6);
  const TensorField gu = sp.grad(u);
  const TensorField d = sp.sym_grad(u);
  const TensorField a = sp.antisym_grad(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double full = gu.xx[i] * gu.xx[i] + gu.xy[i] * gu.xy[i] + gu.yx[i] * gu.yx[i] + gu.yy[i] * gu.yy[i];
    const double dd = d.xx[i] * d.xx[i] + d.xy[i] * d.xy[i] + d.yx[i] * d.yx[i] + d.yy[i] * d.yy[i];
    const double aa = a.xx[i] * a.xx[i] + a.xy[i] * a.xy[i] + a.yx[i] * a.yx[i] + a.yy[i] * a.yy[i];
    worst = std::max(worst, std::fabs(full - dd - aa));
  }
  CHECK(worst <= 1e-14 * 4 * 36 * 36 * 8);

  // rotation-like low mode field has a vanishing symmetric gradient
  const VectorField rot{ScalarField::from_function(g, [](double, double y) { return -std::sin(y); }),
                        ScalarField::from_function(g, [](double x, double) { return std::sin(x); })};
  const TensorField dr = sp.sym_grad(rot);
  CHECK(max_abs(dr.xx) <= 1e-13);
  CHECK(max_abs(dr.yy) <= 1e-13);
  CHECK(max_abs(dr.xy + (-0.5) * ScalarField::from_function(g, [](double x, double y) {
                  return std::cos(x) - std::cos(y);
                })) <= 1e-13);

  const ScalarField noisy = oracle::random_trig(g, rng, 15);
  const ScalarField once = sp.dealias(noisy);
  CHECK(max_diff(sp.dealias(once), once) <= 1e-14 * max_abs(once));
  // products of dealiased fields integrate exactly
  const ScalarField p = sp.product(once, once);
  CHECK(std::fabs(sp.integral(p) - sp.inner(once, once)) <= 1e-10 * sp.inner(once, once));
}

TEST_CASE("snapshot round trip") {
  const Grid g(16, 8);
  std::mt19937_64 rng(6);
  Snapshot s{1.25, g, {{"n", oracle::random_trig(g, rng, 3)}, {"Bx", oracle::random_trig(g, rng, 3)}}};
  std::stringstream ss;
  write_snapshot(ss, s);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 8) == "QMHDSNAP");
  CHECK(bytes.size() == 32 + 16 * 2 + 8 * 128 * 2);
  const Snapshot r = read_snapshot(ss);
  CHECK(r.time == 1.25);
  CHECK(r.grid == g);
  CHECK(max_diff(r.get("Bx"), s.fields[1].field) == 0.0);
  CHECK_THROWS_AS(r.get("missing"), FormatError);
  std::stringstream bad("QMHDSNAX....");
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
}
