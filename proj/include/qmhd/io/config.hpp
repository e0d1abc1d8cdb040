#pragma once

// Run and sweep configuration: INI files with sections
//   [grid] [constitutive] [regularization] [solver] [initial] [output]
// Every key may be overridden by the environment variable
// QMHD_<SECTION>_<KEY> (upper case), e.g. QMHD_SOLVER_DT=5e-4.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qmhd/approximation/params.hpp"
#include "qmhd/constitutive.hpp"

namespace qmhd {

struct ICSpec {
  /// constant | smooth-random | density-bump | orszag-tang-like
  std::string kind = "smooth-random";
  /// Relative density perturbation; |n/mean - 1| <= amplitude.
  double amplitude = 0.2;
  /// Fourier coefficients decay like (1 + |k|^2)^(-decay/2).
  double decay = 2.0;
  /// Random modes have |k| <= kmax.
  int kmax = 3;
  double mean_density = 1.0;
  double mean_bx = 0.0;
  double mean_by = 0.0;
  double velocity_amplitude = 0.1;
  /// Amplitude of the fluctuating magnetic field.
  double field_amplitude = 0.1;
  /// Width of the density bump.
  double width = 0.6;
  std::uint64_t seed = 1;
};

struct RunConfig {
  int nx = 32;
  int ny = 32;
  ConstitutiveParams constitutive;
  /// n_modes = 0 selects every mode of the dealiased ball.
  RegularizationParams regularization{0.0, 0.0, 1, 0};
  SolverOptions solver;
  ICSpec initial;
  /// Diagnostic sample every `cadence` steps.
  int cadence = 10;
  /// Checkpoint every `checkpoint_every` samples; 0 writes only the final one.
  int checkpoint_every = 0;
  std::string output_dir = "qmhd_out";
  /// Write a field snapshot of the final state.
  bool final_snapshot = true;

  /// Throws ConfigError on a violated invariant.
  void validate() const;
  /// n_modes with 0 resolved against the grid.
  RegularizationParams resolved_regularization() const;
};

/// One documented configuration key.
struct ConfigKey {
  std::string section, key, description;
};
const std::vector<ConfigKey>& config_schema();

/// Parses INI text. `source` names the input in error messages. Unknown
/// sections or keys and malformed values raise ConfigError with the line.
RunConfig parse_config(std::istream& is, const std::string& source = "<config>", bool use_env = true);
RunConfig load_config(const std::string& path, bool use_env = true);

/// INI text that parses back to the same configuration.
std::string to_ini(const RunConfig& config);

struct SweepConfig {
  RunConfig base;
  std::vector<double> gamma, alpha, epsilon, lambda_reg, dt;
  /// Grid sizes; each cell uses an N x N grid.
  std::vector<int> n;
  int jobs = 1;

  std::size_t cells() const;
};

/// [sweep] section with `base = <run config>` (relative to the sweep file) and
/// comma-separated axes gamma, alpha, epsilon, lambda, n, dt; an empty axis
/// keeps the base value. Other sections override the base config.
SweepConfig load_sweep(const std::string& path, bool use_env = true);
SweepConfig parse_sweep(std::istream& is, const std::string& base_dir, const std::string& source = "<sweep>",
                        bool use_env = true);

}  // namespace qmhd
