#include "qmhd/spectral/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/simd/kernels.hpp"

namespace qmhd {

Grid::Grid(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
    std::ostringstream os;
    os << "grid dimensions must be even and >= 8, got " << nx << "x" << ny;
    throw ParameterError(os.str());
  }
}

double Grid::dx() const { return 2.0 * std::numbers::pi / nx_; }
double Grid::dy() const { return 2.0 * std::numbers::pi / ny_; }
double Grid::cell_area() const { return dx() * dy(); }

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid.size()) throw ParameterError("ScalarField: value count does not match grid");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  assert(grid_ == other.grid_);
  simd::active_kernels().axpy(1.0, other.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  assert(grid_ == other.grid_);
  simd::active_kernels().axpy(-1.0, other.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::add_scaled(double alpha, const ScalarField& other) {
  assert(grid_ == other.grid_);
  simd::active_kernels().axpy(alpha, other.values_, values_);
  return *this;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField pointwise(const ScalarField& a, const ScalarField& b) {
  assert(a.grid() == b.grid());
  ScalarField out(a.grid());
  simd::active_kernels().multiply(a.values(), b.values(), out.values());
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  x += o.x;
  y += o.y;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  x -= o.x;
  y -= o.y;
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  x *= s;
  y *= s;
  return *this;
}

VectorField& VectorField::add_scaled(double alpha, const VectorField& o) {
  x.add_scaled(alpha, o.x);
  y.add_scaled(alpha, o.y);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

Spectrum::Spectrum(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size()) {}

}  // namespace qmhd
