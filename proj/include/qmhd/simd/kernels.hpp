#pragma once

// Data-parallel inner loops of the field calculus. Every kernel has a scalar
// reference implementation; an AVX2 variant is selected at runtime when the
// CPU supports it. Element-wise kernels are bitwise identical across variants;
// reductions agree to rounding (different summation order).
//
// Set QMHD_SIMD=scalar in the environment to force the reference kernels.

#include <complex>
#include <span>

namespace qmhd::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  /// out[i] = a[i] * b[i]
  void (*multiply)(std::span<const double> a, std::span<const double> b, std::span<double> out);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  /// out[i] = x[i] + alpha * y[i]
  void (*lincomb)(std::span<const double> x, double alpha, std::span<const double> y,
                  std::span<double> out);
  /// c[i] *= symbol[i] (real symbol, e.g. Laplacian or a dealiasing mask)
  void (*scale_spectrum)(std::span<const double> symbol, std::span<cplx> c);
  /// out[i] = 1i * k[i] * in[i] (first derivative in Fourier space)
  void (*derivative_spectrum)(std::span<const double> k, std::span<const cplx> in,
                              std::span<cplx> out);
  /// Compensated sum.
  double (*sum)(std::span<const double> x);
  /// Compensated dot product.
  double (*dot)(std::span<const double> x, std::span<const double> y);
  double (*max_abs)(std::span<const double> x);
};

const KernelTable& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
/// The table used by the field calculus; chosen once per process.
const KernelTable& active_kernels();

}  // namespace qmhd::simd
