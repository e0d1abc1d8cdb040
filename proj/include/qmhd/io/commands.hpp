#pragma once

// run / sweep / verify drivers behind the command-line tool.
//
// A run directory holds
//   config.ini      effective configuration
//   series.csv      diagnostic series
//   checkpoint.bin  latest checkpoint (resumable)
//   checkpoint_last_good.bin  last admissible state after a failure
//   final.snap      field snapshot of the final state
//   report.txt      initial-condition audit and budget audits

#include <iosfwd>
#include <string>
#include <vector>

#include "qmhd/approximation/simulation.hpp"
#include "qmhd/diagnostics/series.hpp"
#include "qmhd/io/config.hpp"

namespace qmhd {

enum ExitCode : int { kExitSuccess = 0, kExitFailure = 1, kExitConfigError = 2 };

struct RunOutcome {
  State final;
  long steps = 0;
  DiagnosticsSeries series;
  std::vector<Report> reports;
};

/// Runs one simulation. Files are written only when config.output_dir is
/// non-empty and `write_files` is set. With `resume_path` the run continues
/// from that checkpoint and keeps the series rows stored before it.
/// Throws ConfigError on bad input and the solver errors on failure; in the
/// latter case checkpoint_last_good.bin and the partial series are written.
RunOutcome execute_run(const RunConfig& config, const std::string& resume_path = "", bool write_files = true);

/// L2 distance over the torus of fields on possibly different grids,
/// computed from their Fourier coefficients (Nyquist modes dropped).
double field_distance(const ScalarField& a, const ScalarField& b);
double field_distance(const VectorField& a, const VectorField& b);

struct SweepCell {
  std::size_t index = 0;
  double gamma = 0.0, alpha = 0.0, epsilon = 0.0, lambda_reg = 0.0, dt = 0.0;
  int n = 0;
  RunConfig config;
};

/// Cartesian product of the sweep axes in the order gamma, alpha, epsilon, lambda, n, dt.
std::vector<SweepCell> expand_sweep(const SweepConfig& sweep);

struct SweepCellResult {
  SweepCell cell;
  bool ok = false;
  std::string message;
  State final;
  long steps = 0;
  double mass_drift = 0.0;
  double energy_final = 0.0;
  /// ||u_2N - u_N||_2 against the cell with doubled n (NaN when absent).
  double cauchy_u = 0.0;
  /// Distance of (n, u, B) to the eps = lambda = 0 cell (NaN when absent).
  double limit_distance = 0.0;
};

struct SweepSummary {
  std::vector<SweepCellResult> cells;
  std::size_t failed() const;
  void write_csv(std::ostream& os) const;
};

/// Runs every cell on `jobs` worker threads. A failing cell is recorded and
/// does not stop the others. With a non-empty output_dir each cell writes to
/// output_dir/cell_<index>, progress lines are appended to progress.csv as
/// cells finish, and summary.csv is written at the end.
SweepSummary execute_sweep(const SweepConfig& sweep, const std::string& output_dir, int jobs);

/// Command entry points; they print to `out`/`err` and return an ExitCode.
int run_command(const std::string& config_path, const std::string& resume_path, const std::string& output_dir,
                long seed, int cadence, std::ostream& out, std::ostream& err);
int sweep_command(const std::string& sweep_path, int jobs, const std::string& output_dir, long seed, int cadence,
                  std::ostream& out, std::ostream& err);
int verify_command(bool fast, const std::string& output_dir, long seed, std::ostream& out, std::ostream& err);

}  // namespace qmhd
