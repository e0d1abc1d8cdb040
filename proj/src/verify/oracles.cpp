#include "qmhd/verify/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace qmhd::oracle {

double derivative(const std::function<double(double)>& f, double x, double rel) {
  const double h = rel * std::max(std::fabs(x), 1e-3);
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double second_derivative(const std::function<double(double)>& f, double x, double rel) {
  const double h = rel * std::max(std::fabs(x), 1e-3);
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  const int m = intervals + (intervals % 2);
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ScalarField random_trig(const Grid& grid, std::mt19937_64& rng, int kmax, double amp, double decay) {
  ScalarField f(grid);
  for (int kx = 0; kx <= kmax; ++kx) {
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      const double scale = amp * std::pow(1.0 + kx * kx + ky * ky, -0.5 * decay);
      const double a = scale * (2.0 * uniform01(rng) - 1.0);
      const double b = scale * (2.0 * uniform01(rng) - 1.0);
      for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
          const double ph = kx * grid.x(i) + ky * grid.y(j);
          f.at(i, j) += a * std::cos(ph) + b * std::sin(ph);
        }
    }
  }
  return f;
}

VectorField random_trig_vector(const Grid& grid, std::mt19937_64& rng, int kmax, double amp, double decay) {
  ScalarField fx = random_trig(grid, rng, kmax, amp, decay);
  ScalarField fy = random_trig(grid, rng, kmax, amp, decay);
  return VectorField{std::move(fx), std::move(fy)};
}

ScalarField random_density(const Grid& grid, std::mt19937_64& rng, int kmax, double amp) {
  ScalarField f = random_trig(grid, rng, kmax);
  const double peak = std::max(std::fabs(f.min()), std::fabs(f.max()));
  return f.map([&](double v) { return 1.0 + amp * v / peak; });
}

double order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace qmhd::oracle
