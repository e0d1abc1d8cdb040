#include "qmhd/spectral/spectral.hpp"

#include <fftw3.h>

#include <cassert>
#include <cmath>
#include <mutex>
#include <numbers>

#include "qmhd/simd/kernels.hpp"

namespace qmhd {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Spectral::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(const Grid& g) {
    std::vector<double> real(g.size());
    std::vector<std::complex<double>> spec(g.spectral_size());
    auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    r2c = fftw_plan_dft_r2c_2d(g.ny(), g.nx(), real.data(), cspec, flags);
    c2r = fftw_plan_dft_c2r_2d(g.ny(), g.nx(), cspec, real.data(), flags);
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Spectral::Spectral(const Grid& grid) : grid_(grid), plans_(std::make_shared<Plans>(grid)) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int hx = nx / 2 + 1;
  const std::size_t m = grid.spectral_size();
  kx_.resize(m);
  ky_.resize(m);
  kx_deriv_.resize(m);
  ky_deriv_.resize(m);
  k2_.resize(m);
  dealias_mask_.resize(m);
  weight_.resize(m);
  const double rx = nx / 3.0;
  const double ry = ny / 3.0;
  for (int j = 0; j < ny; ++j) {
    const int ky = j <= ny / 2 ? j : j - ny;
    for (int i = 0; i < hx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * hx + i;
      kx_[idx] = i;
      ky_[idx] = ky;
      kx_deriv_[idx] = (i == nx / 2) ? 0.0 : static_cast<double>(i);
      ky_deriv_[idx] = (j == ny / 2) ? 0.0 : static_cast<double>(ky);
      k2_[idx] = static_cast<double>(i) * i + static_cast<double>(ky) * ky;
      const double r = (i / rx) * (i / rx) + (ky / ry) * (ky / ry);
      dealias_mask_[idx] = r <= 1.0 ? 1.0 : 0.0;
      weight_[idx] = (i == 0 || i == nx / 2) ? 1.0 : 2.0;
    }
  }
}

double Spectral::dealias_radius() const { return grid_.nx() / 3.0; }

std::ptrdiff_t Spectral::index_of(int kx, int ky) const {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  if (kx < 0 || kx > nx / 2) return -1;
  if (ky < -(ny / 2) || ky > ny / 2) return -1;
  const int j = ky >= 0 ? ky : ky + ny;
  return static_cast<std::ptrdiff_t>(j) * (nx / 2 + 1) + kx;
}

Spectrum Spectral::forward(const ScalarField& f) const {
  assert(f.grid() == grid_);
  Spectrum s(grid_);
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(s.coeffs().data()));
  const double norm = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : s.coeffs()) c *= norm;
  return s;
}

ScalarField Spectral::inverse(const Spectrum& s) const {
  assert(s.grid() == grid_);
  std::vector<std::complex<double>> scratch(s.coeffs().begin(), s.coeffs().end());
  ScalarField f(grid_);
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), f.values().data());
  return f;
}

Spectrum Spectral::derivative(const Spectrum& s, const std::vector<double>& k) const {
  Spectrum out(grid_);
  simd::active_kernels().derivative_spectrum(k, s.coeffs(), out.coeffs());
  return out;
}

Spectrum Spectral::dx(const Spectrum& s) const { return derivative(s, kx_deriv_); }
Spectrum Spectral::dy(const Spectrum& s) const { return derivative(s, ky_deriv_); }

Spectrum Spectral::laplacian(const Spectrum& s) const { return hyper(s, 1); }

Spectrum Spectral::hyper(const Spectrum& s, int k) const {
  std::vector<double> symbol(k2_.size());
  for (std::size_t i = 0; i < symbol.size(); ++i) {
    double v = 1.0;
    for (int p = 0; p < k; ++p) v *= -k2_[i];
    symbol[i] = v;
  }
  Spectrum out = s;
  simd::active_kernels().scale_spectrum(symbol, out.coeffs());
  return out;
}

Spectrum Spectral::dealias(const Spectrum& s) const {
  Spectrum out = s;
  simd::active_kernels().scale_spectrum(dealias_mask_, out.coeffs());
  return out;
}

ScalarField Spectral::dx(const ScalarField& f) const { return inverse(dx(forward(f))); }
ScalarField Spectral::dy(const ScalarField& f) const { return inverse(dy(forward(f))); }

VectorField Spectral::grad(const ScalarField& f) const {
  const Spectrum s = forward(f);
  return {inverse(dx(s)), inverse(dy(s))};
}

ScalarField Spectral::div(const VectorField& v) const {
  Spectrum sx = dx(forward(v.x));
  const Spectrum sy = dy(forward(v.y));
  for (std::size_t i = 0; i < sx.coeffs().size(); ++i) sx[i] += sy[i];
  return inverse(sx);
}

ScalarField Spectral::laplacian(const ScalarField& f) const { return inverse(laplacian(forward(f))); }
ScalarField Spectral::hyper(const ScalarField& f, int k) const { return inverse(hyper(forward(f), k)); }

VectorField Spectral::hyper(const VectorField& v, int k) const { return {hyper(v.x, k), hyper(v.y, k)}; }

ScalarField Spectral::curl2(const VectorField& v) const {
  Spectrum s = dx(forward(v.y));
  const Spectrum t = dy(forward(v.x));
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) s[i] -= t[i];
  return inverse(s);
}

VectorField Spectral::curl_scalar(const ScalarField& e) const {
  const Spectrum s = forward(e);
  ScalarField ex = inverse(dx(s));
  ex *= -1.0;
  return {inverse(dy(s)), std::move(ex)};
}

ScalarField Spectral::emf(const VectorField& u, const VectorField& b) const {
  ScalarField e = pointwise(u.x, b.y);
  e -= pointwise(u.y, b.x);
  return dealias(e);
}

VectorField Spectral::lorentz(const VectorField& b) const {
  const ScalarField omega = curl2(b);
  ScalarField fx = pointwise(omega, b.y);
  fx *= -1.0;
  return dealias(VectorField{std::move(fx), pointwise(omega, b.x)});
}

TensorField Spectral::grad(const VectorField& v) const {
  const Spectrum sx = forward(v.x);
  const Spectrum sy = forward(v.y);
  return {inverse(dx(sx)), inverse(dy(sx)), inverse(dx(sy)), inverse(dy(sy))};
}

TensorField Spectral::sym_grad(const VectorField& v) const {
  TensorField g = grad(v);
  ScalarField off = g.xy + g.yx;
  off *= 0.5;
  return {std::move(g.xx), off, off, std::move(g.yy)};
}

TensorField Spectral::antisym_grad(const VectorField& v) const {
  TensorField g = grad(v);
  ScalarField off = g.xy - g.yx;
  off *= 0.5;
  ScalarField neg = off;
  neg *= -1.0;
  return {ScalarField(grid_), std::move(off), std::move(neg), ScalarField(grid_)};
}

VectorField Spectral::div(const TensorField& t) const {
  return {div(VectorField{t.xx, t.xy}), div(VectorField{t.yx, t.yy})};
}

ScalarField Spectral::dealias(const ScalarField& f) const { return inverse(dealias(forward(f))); }

VectorField Spectral::dealias(const VectorField& v) const { return {dealias(v.x), dealias(v.y)}; }

ScalarField Spectral::product(const ScalarField& a, const ScalarField& b) const {
  return dealias(pointwise(a, b));
}

VectorField Spectral::product(const ScalarField& a, const VectorField& v) const {
  return {product(a, v.x), product(a, v.y)};
}

double Spectral::integral(const ScalarField& f) const {
  return grid_.cell_area() * simd::active_kernels().sum(f.values());
}

double Spectral::inner(const ScalarField& f, const ScalarField& g) const {
  return grid_.cell_area() * simd::active_kernels().dot(f.values(), g.values());
}

double Spectral::inner(const VectorField& f, const VectorField& g) const {
  return inner(f.x, g.x) + inner(f.y, g.y);
}

double Spectral::inner(const TensorField& f, const TensorField& g) const {
  return inner(f.xx, g.xx) + inner(f.xy, g.xy) + inner(f.yx, g.yx) + inner(f.yy, g.yy);
}

double Spectral::norm_l2(const ScalarField& f) const { return std::sqrt(inner(f, f)); }
double Spectral::norm_l2(const VectorField& v) const { return std::sqrt(inner(v, v)); }

double Spectral::parseval(const Spectrum& s) const { return seminorm_sq(s, 0); }

double Spectral::seminorm_sq(const ScalarField& f, int m) const { return seminorm_sq(forward(f), m); }

double Spectral::seminorm_sq(const Spectrum& s, int m) const {
  std::vector<double> terms(s.coeffs().size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    double w = weight_[i];
    for (int p = 0; p < m; ++p) w *= k2_[i];
    terms[i] = w * std::norm(s[i]);
  }
  const double area = 4.0 * std::numbers::pi * std::numbers::pi;
  return area * simd::active_kernels().sum(terms);
}

}  // namespace qmhd
