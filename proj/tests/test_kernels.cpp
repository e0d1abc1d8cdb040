#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "qmhd/simd/kernels.hpp"
#include "qmhd/verify/oracles.hpp"

using namespace qmhd;
using simd::cplx;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * oracle::uniform01(rng) - 1.0;
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("AVX2 kernels match the scalar reference") {
  const simd::KernelTable* vec = simd::avx2_kernels();
  if (!vec) {
    MESSAGE("AVX2 unavailable; equivalence test skipped");
    return;
  }
  const simd::KernelTable& ref = simd::scalar_kernels();
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1023u}) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);

    std::vector<double> r1(n), r2(n);
    ref.multiply(a, b, r1);
    vec->multiply(a, b, r2);
    CHECK(bitwise_equal(r1, r2));

    r1 = b;
    r2 = b;
    ref.axpy(0.37, a, r1);
    vec->axpy(0.37, a, r2);
    CHECK(bitwise_equal(r1, r2));

    ref.lincomb(a, -1.25, b, r1);
    vec->lincomb(a, -1.25, b, r2);
    CHECK(bitwise_equal(r1, r2));

    std::vector<cplx> c1(n), c2(n);
    for (std::size_t i = 0; i < n; ++i) c1[i] = c2[i] = cplx(a[i], b[i]);
    ref.scale_spectrum(a, c1);
    vec->scale_spectrum(a, c2);
    CHECK(std::memcmp(c1.data(), c2.data(), n * sizeof(cplx)) == 0);

    std::vector<cplx> d1(n), d2(n);
    ref.derivative_spectrum(b, c1, d1);
    vec->derivative_spectrum(b, c1, d2);
    CHECK(std::memcmp(d1.data(), d2.data(), n * sizeof(cplx)) == 0);

    const double scale = n ? double(n) : 1.0;
    CHECK(std::fabs(ref.sum(a) - vec->sum(a)) <= 1e-15 * scale);
    CHECK(std::fabs(ref.dot(a, b) - vec->dot(a, b)) <= 1e-15 * scale);
    CHECK(ref.max_abs(a) == vec->max_abs(a));
  }
}

TEST_CASE("compensated sum recovers cancellation") {
  for (const simd::KernelTable* k : {&simd::scalar_kernels(), simd::avx2_kernels()}) {
    if (!k) continue;
    std::vector<double> v;
    for (int i = 0; i < 1001; ++i) {
      v.push_back(1e16);
      v.push_back(1.0);
      v.push_back(-1e16);
    }
    CHECK(k->sum(v) == 1001.0);
  }
}

TEST_CASE("max_abs propagates NaN") {
  for (const simd::KernelTable* k : {&simd::scalar_kernels(), simd::avx2_kernels()}) {
    if (!k) continue;
    std::vector<double> v(9, 1.0);
    v[6] = std::numeric_limits<double>::quiet_NaN();
    CHECK(std::isnan(k->max_abs(v)));
    v[6] = -3.0;
    CHECK(k->max_abs(v) == 3.0);
  }
}

TEST_CASE("active kernel selection") {
  const char* name = simd::active_kernels().name;
  const char* env = std::getenv("QMHD_SIMD");
  if (env && std::string(env) == "scalar")
    CHECK(std::string(name) == "scalar");
  else
    CHECK(std::string(name) == (simd::avx2_kernels() ? "avx2" : "scalar"));
}
