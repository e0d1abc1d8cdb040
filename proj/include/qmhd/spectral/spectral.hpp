#pragma once

// Pseudo-spectral calculus on the periodic box. Derivatives are exact for the
// trigonometric interpolant; odd derivatives drop the Nyquist modes so that
// the derivative matrices are skew-symmetric and discrete integration by
// parts holds exactly. Integrals are collocation (rectangle) sums.

#include <memory>
#include <vector>

#include "qmhd/spectral/grid.hpp"

namespace qmhd {

class Spectral {
 public:
  explicit Spectral(const Grid& grid);

  const Grid& grid() const { return grid_; }

  Spectrum forward(const ScalarField& f) const;
  ScalarField inverse(const Spectrum& s) const;

  /// Signed wavenumbers of half-plane entry `idx`.
  int kx(std::size_t idx) const { return kx_[idx]; }
  int ky(std::size_t idx) const { return ky_[idx]; }
  /// |k|^2 of half-plane entry `idx`.
  double k2(std::size_t idx) const { return k2_[idx]; }
  /// Half-plane index of the mode (kx >= 0, any ky); -1 if not stored.
  std::ptrdiff_t index_of(int kx, int ky) const;
  /// Multiplicity of a half-plane entry in the full spectrum (1 or 2).
  double hermitian_weight(std::size_t idx) const { return weight_[idx]; }
  bool resolved(std::size_t idx) const { return dealias_mask_[idx] != 0.0; }
  /// Largest |k| kept by the 2/3 rule along x.
  double dealias_radius() const;

  // Spectral-space operators (return new spectra).
  Spectrum dx(const Spectrum& s) const;
  Spectrum dy(const Spectrum& s) const;
  Spectrum laplacian(const Spectrum& s) const;
  /// Laplacian to the k-th power: symbol (-|k|^2)^k.
  Spectrum hyper(const Spectrum& s, int k) const;
  Spectrum dealias(const Spectrum& s) const;

  // Physical-space operators.
  ScalarField dx(const ScalarField& f) const;
  ScalarField dy(const ScalarField& f) const;
  VectorField grad(const ScalarField& f) const;
  ScalarField div(const VectorField& v) const;
  ScalarField laplacian(const ScalarField& f) const;
  ScalarField hyper(const ScalarField& f, int k) const;
  /// Component-wise hyper-Laplacian of a vector field.
  VectorField hyper(const VectorField& v, int k) const;
  /// d_x v_y - d_y v_x
  ScalarField curl2(const VectorField& v) const;
  /// Curl of the out-of-plane scalar e: (d_y e, -d_x e).
  VectorField curl_scalar(const ScalarField& e) const;
  /// Out-of-plane component of u x B, dealiased.
  ScalarField emf(const VectorField& u, const VectorField& b) const;
  /// (curl B) x B = omega (-B_y, B_x) with omega = curl2(B), dealiased.
  VectorField lorentz(const VectorField& b) const;
  /// Full gradient, component (r, c) = d_c v_r.
  TensorField grad(const VectorField& v) const;
  /// D(u) = (grad u + grad u^T) / 2
  TensorField sym_grad(const VectorField& v) const;
  /// A(u) = (grad u - grad u^T) / 2
  TensorField antisym_grad(const VectorField& v) const;
  /// Row-wise divergence: (div T)_r = sum_c d_c T_rc.
  VectorField div(const TensorField& t) const;

  ScalarField dealias(const ScalarField& f) const;
  VectorField dealias(const VectorField& v) const;
  /// Point-wise product followed by 2/3-rule dealiasing.
  ScalarField product(const ScalarField& a, const ScalarField& b) const;
  VectorField product(const ScalarField& a, const VectorField& v) const;

  // Quadrature.
  double integral(const ScalarField& f) const;
  double inner(const ScalarField& f, const ScalarField& g) const;
  double inner(const VectorField& f, const VectorField& g) const;
  double inner(const TensorField& f, const TensorField& g) const;
  double norm_l2(const ScalarField& f) const;
  double norm_l2(const VectorField& v) const;
  /// int |f|^2 evaluated from the spectrum (Parseval).
  double parseval(const Spectrum& s) const;
  /// int |grad^m f|^2 = (2pi)^2 sum |k|^(2m) |f_k|^2.
  double seminorm_sq(const ScalarField& f, int m) const;
  double seminorm_sq(const Spectrum& s, int m) const;

 private:
  struct Plans;

  Spectrum derivative(const Spectrum& s, const std::vector<double>& k) const;

  Grid grid_;
  std::shared_ptr<const Plans> plans_;
  std::vector<int> kx_, ky_;
  std::vector<double> kx_deriv_, ky_deriv_, k2_, dealias_mask_, weight_;
};

}  // namespace qmhd
