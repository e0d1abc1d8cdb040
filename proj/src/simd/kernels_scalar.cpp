#include <cmath>

#include "qmhd/simd/kernels.hpp"

namespace qmhd::simd {

namespace {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void lincomb(std::span<const double> x, double alpha, std::span<const double> y,
             std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + alpha * y[i];
}

void scale_spectrum(std::span<const double> symbol, std::span<cplx> c) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = cplx(c[i].real() * symbol[i], c[i].imag() * symbol[i]);
}

void derivative_spectrum(std::span<const double> k, std::span<const cplx> in, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double re = in[i].real();
    const double im = in[i].imag();
    out[i] = cplx(-(k[i] * im), k[i] * re);
  }
}

// Neumaier summation.
double sum(std::span<const double> x) {
  double s = 0.0;
  double c = 0.0;
  for (double v : x) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  return s + c;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x[i] * y[i];
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  return s + c;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) {
    const double a = std::fabs(v);
    if (a > m || std::isnan(a)) m = a;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", multiply, axpy, lincomb, scale_spectrum,
                                 derivative_spectrum, sum, dot, max_abs};
  return table;
}

}  // namespace qmhd::simd
