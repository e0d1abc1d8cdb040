#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmhd {

/// Uniform collocation grid on the periodic box [0, 2pi)^2.
class Grid {
 public:
  Grid() = default;
  /// nx, ny must be even and >= 8.
  Grid(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  /// Length of the half-plane (r2c) spectrum: ny * (nx/2 + 1).
  std::size_t spectral_size() const { return static_cast<std::size_t>(ny_) * (nx_ / 2 + 1); }
  double dx() const;
  double dy() const;
  /// Quadrature weight of one collocation point: (2pi)^2 / (nx ny).
  double cell_area() const;
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }
  /// Row-major index: x varies fastest.
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

  bool operator==(const Grid&) const = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
};

/// Real collocation values on a grid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& at(int i, int j) { return values_[grid_.index(i, j)]; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  /// this += alpha * other
  ScalarField& add_scaled(double alpha, const ScalarField& other);

  double min() const;
  double max() const;
  bool all_finite() const;

  template <class Fn>
  static ScalarField from_function(const Grid& grid, Fn&& fn) {
    ScalarField f(grid);
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) f.at(i, j) = fn(grid.x(i), grid.y(j));
    return f;
  }

  /// Point-wise map.
  template <class Fn>
  ScalarField map(Fn&& fn) const {
    ScalarField out(grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = fn(values_[k]);
    return out;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
/// Point-wise product (no dealiasing; see Spectral::product).
ScalarField pointwise(const ScalarField& a, const ScalarField& b);

/// In-plane vector field.
struct VectorField {
  ScalarField x;
  ScalarField y;

  VectorField() = default;
  explicit VectorField(const Grid& grid, double fx = 0.0, double fy = 0.0) : x(grid, fx), y(grid, fy) {}
  VectorField(ScalarField fx, ScalarField fy) : x(std::move(fx)), y(std::move(fy)) {}

  const Grid& grid() const { return x.grid(); }
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& add_scaled(double alpha, const VectorField& o);
  bool all_finite() const { return x.all_finite() && y.all_finite(); }
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// 2x2 tensor field, component (r, c) = d_c v_r for gradients.
struct TensorField {
  ScalarField xx, xy, yx, yy;
};

/// Normalized half-plane Fourier coefficients: f(x) = sum_k c_k exp(i k.x).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<std::complex<double>> coeffs() { return coeffs_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::complex<double>& operator[](std::size_t k) { return coeffs_[k]; }
  const std::complex<double>& operator[](std::size_t k) const { return coeffs_[k]; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace qmhd
