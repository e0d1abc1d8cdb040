#include "qmhd/spectral/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/simd/kernels.hpp"

namespace qmhd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

std::vector<Mode> resolvable_modes(const Grid& grid) {
  const double rx = grid.nx() / 3.0;
  const double ry = grid.ny() / 3.0;
  std::vector<Mode> modes;
  for (int kx = 0; kx < grid.nx() / 2; ++kx) {
    for (int ky = -(grid.ny() / 2) + 1; ky < grid.ny() / 2; ++ky) {
      if (kx == 0 && ky < 0) continue;
      const double r = (kx / rx) * (kx / rx) + (ky / ry) * (ky / ry);
      if (r <= 1.0) modes.push_back({kx, ky});
    }
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    const int ka = a.kx * a.kx + a.ky * a.ky;
    const int kb = b.kx * b.kx + b.ky * b.ky;
    if (ka != kb) return ka < kb;
    if (a.kx != b.kx) return a.kx < b.kx;
    return a.ky < b.ky;
  });
  return modes;
}

}  // namespace

int GalerkinSpace::max_modes(const Grid& grid) { return static_cast<int>(resolvable_modes(grid).size()); }

GalerkinSpace::GalerkinSpace(const Spectral& spectral, int n_modes) : spectral_(spectral) {
  std::vector<Mode> all = resolvable_modes(spectral.grid());
  if (n_modes < 1 || n_modes > static_cast<int>(all.size())) {
    std::ostringstream os;
    os << "n_modes must lie in [1, " << all.size() << "] on a " << spectral.grid().nx() << "x"
       << spectral.grid().ny() << " grid, got " << n_modes;
    throw ParameterError(os.str());
  }
  modes_.assign(all.begin(), all.begin() + n_modes);
  for (const Mode& m : modes_) {
    index_.push_back(static_cast<std::size_t>(spectral.index_of(m.kx, m.ky)));
    mirror_.push_back(m.kx == 0 && m.ky > 0 ? spectral.index_of(0, -m.ky) : -1);
  }
}

double GalerkinSpace::max_wavenumber() const {
  const Mode& m = modes_.back();
  return std::sqrt(static_cast<double>(m.kx * m.kx + m.ky * m.ky));
}

ScalarField GalerkinSpace::synthesize_component(std::span<const double> coeffs) const {
  Spectrum s(spectral_.grid());
  const double c0 = 1.0 / kTwoPi;
  const double ck = kSqrt2 / (2.0 * kTwoPi);
  s[index_[0]] = coeffs[0] * c0;
  for (std::size_t m = 1; m < modes_.size(); ++m) {
    const std::complex<double> c(ck * coeffs[2 * m - 1], -ck * coeffs[2 * m]);
    s[index_[m]] = c;
    if (mirror_[m] >= 0) s[static_cast<std::size_t>(mirror_[m])] = std::conj(c);
  }
  return spectral_.inverse(s);
}

VectorField GalerkinSpace::synthesize(std::span<const double> coeffs) const {
  const std::size_t d = dofs_per_component();
  return {synthesize_component(coeffs.subspan(0, d)), synthesize_component(coeffs.subspan(d, d))};
}

std::vector<double> GalerkinSpace::project_component(const ScalarField& f) const {
  const Spectrum s = spectral_.forward(f);
  std::vector<double> out(dofs_per_component());
  const double c0 = kTwoPi;
  const double ck = kSqrt2 * kTwoPi;
  out[0] = c0 * s[index_[0]].real();
  for (std::size_t m = 1; m < modes_.size(); ++m) {
    out[2 * m - 1] = ck * s[index_[m]].real();
    out[2 * m] = -ck * s[index_[m]].imag();
  }
  return out;
}

Coefficients GalerkinSpace::project(const VectorField& f) const {
  Coefficients out = project_component(f.x);
  const std::vector<double> y = project_component(f.y);
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

VectorField GalerkinSpace::projection(const VectorField& f) const { return synthesize(project(f)); }

std::complex<double> GalerkinSpace::fourier_coefficient(std::span<const double> coeffs, int component,
                                                        std::size_t mode) const {
  const std::span<const double> c = coeffs.subspan(component * dofs_per_component(), dofs_per_component());
  if (mode == 0) return c[0] / kTwoPi;
  const double ck = kSqrt2 / (2.0 * kTwoPi);
  return {ck * c[2 * mode - 1], -ck * c[2 * mode]};
}

GalerkinVelocity::GalerkinVelocity(const GalerkinSpace& space, Coefficients coeffs)
    : coeffs_(std::move(coeffs)), field_(space.synthesize(coeffs_)) {
  if (coeffs_.size() != space.dofs()) throw ParameterError("GalerkinVelocity: coefficient count mismatch");
}

GalerkinVelocity GalerkinVelocity::zero(const GalerkinSpace& space) {
  return GalerkinVelocity(space, Coefficients(space.dofs(), 0.0));
}

GalerkinVelocity GalerkinVelocity::from_field(const GalerkinSpace& space, const VectorField& f) {
  return GalerkinVelocity(space, space.project(f));
}

double GalerkinVelocity::norm() const { return qmhd::norm(coeffs_); }

double dot(std::span<const double> a, std::span<const double> b) { return simd::active_kernels().dot(a, b); }

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace qmhd
