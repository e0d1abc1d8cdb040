#pragma once

// Finite-dimensional velocity space X_N spanned by the lowest N Fourier modes.
//
// A mode is a half-plane representative k (kx > 0, or kx = 0 and ky >= 0);
// modes are ordered by |k|^2 with lexicographic (kx, ky) tie-break. Each
// component is expanded in the real orthonormal basis
//   e_0 = 1/(2pi),  e_{k,c} = sqrt(2) cos(k.x)/(2pi),  e_{k,s} = sqrt(2) sin(k.x)/(2pi),
// so the discrete L^2 inner product of two members equals the Euclidean dot
// product of their coefficient vectors.

#include <complex>
#include <span>
#include <vector>

#include "qmhd/spectral/spectral.hpp"

namespace qmhd {

struct Mode {
  int kx;
  int ky;
};

/// Coefficient vector in the orthonormal real basis of X_N x X_N.
/// Layout: [x-component dofs..., y-component dofs...].
using Coefficients = std::vector<double>;

class GalerkinSpace {
 public:
  GalerkinSpace(const Spectral& spectral, int n_modes);

  /// Number of half-plane modes resolvable on the grid (inside the 2/3 ball).
  static int max_modes(const Grid& grid);

  int n_modes() const { return static_cast<int>(modes_.size()); }
  const std::vector<Mode>& modes() const { return modes_; }
  /// Real degrees of freedom per component: 1 + 2 (N - 1).
  std::size_t dofs_per_component() const { return 2 * modes_.size() - 1; }
  std::size_t dofs() const { return 2 * dofs_per_component(); }
  const Spectral& spectral() const { return spectral_; }
  double max_wavenumber() const;

  /// Collocation image of a coefficient vector.
  VectorField synthesize(std::span<const double> coeffs) const;
  ScalarField synthesize_component(std::span<const double> coeffs) const;
  /// Discrete L^2 projection: coefficient j = <f, e_j>.
  Coefficients project(const VectorField& f) const;
  std::vector<double> project_component(const ScalarField& f) const;
  /// P_N f as a collocation field.
  VectorField projection(const VectorField& f) const;

  /// Fourier coefficient c_k (f = sum c_k e^{ik.x}) of `component` for mode m.
  std::complex<double> fourier_coefficient(std::span<const double> coeffs, int component,
                                           std::size_t mode) const;

 private:
  Spectral spectral_;
  std::vector<Mode> modes_;
  std::vector<std::size_t> index_;      // half-plane spectrum index of each mode
  std::vector<std::ptrdiff_t> mirror_;  // index of (0, -ky) for kx = 0 modes, else -1
};

/// Velocity in X_N: coefficients plus its collocation image.
class GalerkinVelocity {
 public:
  GalerkinVelocity() = default;
  GalerkinVelocity(const GalerkinSpace& space, Coefficients coeffs);
  static GalerkinVelocity zero(const GalerkinSpace& space);
  /// Projects a collocation field onto X_N.
  static GalerkinVelocity from_field(const GalerkinSpace& space, const VectorField& f);

  const Coefficients& coefficients() const { return coeffs_; }
  const VectorField& field() const { return field_; }
  double norm() const;

 private:
  Coefficients coeffs_;
  VectorField field_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

}  // namespace qmhd
