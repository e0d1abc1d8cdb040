#pragma once

// Independent reference computations used by the property tests and the
// verify suite: finite differences, quadrature and random smooth fields.

#include <cstdint>
#include <functional>
#include <random>

#include "qmhd/spectral/grid.hpp"

namespace qmhd::oracle {

/// Fourth-order central difference with relative step `rel` * max(|x|, 1e-3).
double derivative(const std::function<double(double)>& f, double x, double rel = 1e-3);
/// Fourth-order central second difference.
double second_derivative(const std::function<double(double)>& f, double x, double rel = 1e-2);
/// Composite Simpson rule with `intervals` (rounded up to even) sub-intervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 2000);

/// Uniform double in [0, 1) from the top 53 bits; platform independent.
double uniform01(std::mt19937_64& rng);

/// Real trigonometric polynomial sum_{|k|_inf <= kmax} a_k cos(k.x) + b_k sin(k.x)
/// with coefficients uniform in [-amp, amp] scaled by (1+|k|^2)^(-decay/2).
ScalarField random_trig(const Grid& grid, std::mt19937_64& rng, int kmax, double amp = 1.0, double decay = 0.0);
VectorField random_trig_vector(const Grid& grid, std::mt19937_64& rng, int kmax, double amp = 1.0,
                               double decay = 0.0);
/// 1 + amp * random_trig / max|random_trig|, strictly positive for amp < 1.
ScalarField random_density(const Grid& grid, std::mt19937_64& rng, int kmax, double amp = 0.3);

/// log2(a / b); the observed order when a step is halved.
double order(double coarse, double fine);

}  // namespace qmhd::oracle
