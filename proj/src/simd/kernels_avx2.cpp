#include <cmath>
#include <limits>

#include "qmhd/simd/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define QMHD_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define QMHD_HAVE_AVX2_BUILD 0
#endif

namespace qmhd::simd {

#if QMHD_HAVE_AVX2_BUILD

namespace {

#define QMHD_AVX2 __attribute__((target("avx2")))

QMHD_AVX2 void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

QMHD_AVX2 void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = y.size();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&y[i], _mm256_add_pd(_mm256_loadu_pd(&y[i]), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

QMHD_AVX2 void lincomb(std::span<const double> x, double alpha, std::span<const double> y,
                       std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(&y[i]));
    _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_loadu_pd(&x[i]), prod));
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

// [s0, s1] -> [s0, s0, s1, s1]
QMHD_AVX2 inline __m256d duplicate_pairs(const double* s) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(s)), 0x50);
}

QMHD_AVX2 void scale_spectrum(std::span<const double> symbol, std::span<cplx> c) {
  const std::size_t n = c.size();
  double* data = reinterpret_cast<double*>(c.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d s = duplicate_pairs(&symbol[i]);
    _mm256_storeu_pd(data + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(data + 2 * i), s));
  }
  for (; i < n; ++i) c[i] = cplx(c[i].real() * symbol[i], c[i].imag() * symbol[i]);
}

QMHD_AVX2 void derivative_spectrum(std::span<const double> k, std::span<const cplx> in,
                                   std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* src = reinterpret_cast<const double*>(in.data());
  double* dst = reinterpret_cast<double*>(out.data());
  const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d kk = duplicate_pairs(&k[i]);
    const __m256d swapped = _mm256_permute_pd(_mm256_loadu_pd(src + 2 * i), 0x5);
    _mm256_storeu_pd(dst + 2 * i, _mm256_xor_pd(_mm256_mul_pd(kk, swapped), sign));
  }
  for (; i < n; ++i) {
    const double re = in[i].real();
    const double im = in[i].imag();
    out[i] = cplx(-(k[i] * im), k[i] * re);
  }
}

QMHD_AVX2 inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Neumaier update in four independent lanes.
QMHD_AVX2 inline void neumaier_step(__m256d& s, __m256d& c, __m256d v) {
  const __m256d t = _mm256_add_pd(s, v);
  const __m256d s_big = _mm256_cmp_pd(vabs(s), vabs(v), _CMP_GE_OQ);
  const __m256d comp_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
  const __m256d comp_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
  c = _mm256_add_pd(c, _mm256_blendv_pd(comp_v, comp_s, s_big));
  s = t;
}

QMHD_AVX2 double fold_lanes(__m256d s, __m256d c, double tail_s, double tail_c) {
  alignas(32) double ls[4];
  alignas(32) double lc[4];
  _mm256_store_pd(ls, s);
  _mm256_store_pd(lc, c);
  double total = 0.0;
  double comp = tail_c + lc[0] + lc[1] + lc[2] + lc[3];
  const double parts[5] = {ls[0], ls[1], ls[2], ls[3], tail_s};
  for (double v : parts) {
    const double t = total + v;
    if (std::fabs(total) >= std::fabs(v))
      comp += (total - t) + v;
    else
      comp += (v - t) + total;
    total = t;
  }
  return total + comp;
}

inline void neumaier_scalar(double& s, double& c, double v) {
  const double t = s + v;
  if (std::fabs(s) >= std::fabs(v))
    c += (s - t) + v;
  else
    c += (v - t) + s;
  s = t;
}

QMHD_AVX2 double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) neumaier_step(s, c, _mm256_loadu_pd(&x[i]));
  double ts = 0.0, tc = 0.0;
  for (; i < n; ++i) neumaier_scalar(ts, tc, x[i]);
  return fold_lanes(s, c, ts, tc);
}

QMHD_AVX2 double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    neumaier_step(s, c, _mm256_mul_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i])));
  double ts = 0.0, tc = 0.0;
  for (; i < n; ++i) neumaier_scalar(ts, tc, x[i] * y[i]);
  return fold_lanes(s, c, ts, tc);
}

QMHD_AVX2 double max_abs(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d m = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, vabs(v));
  }
  alignas(32) double lm[4];
  _mm256_store_pd(lm, m);
  double result = std::fmax(std::fmax(lm[0], lm[1]), std::fmax(lm[2], lm[3]));
  bool any_nan = _mm256_movemask_pd(nan_seen) != 0;
  for (; i < n; ++i) {
    if (std::isnan(x[i])) any_nan = true;
    result = std::fmax(result, std::fabs(x[i]));
  }
  return any_nan ? std::numeric_limits<double>::quiet_NaN() : result;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{"avx2", multiply, axpy, lincomb, scale_spectrum,
                                 derivative_spectrum, sum, dot, max_abs};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace qmhd::simd
