#pragma once

// Time series of diagnostic samples and the flat key-value reports built on them.

#include <iosfwd>
#include <string>
#include <vector>

#include "qmhd/diagnostics/budgets.hpp"

namespace qmhd {

/// Flat key-value report. `ok` is false when a check inside it failed.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> entries;
  bool ok = true;

  void add(const std::string& key, double value);
  void add(const std::string& key, long value);
  void add(const std::string& key, const std::string& value);
  /// Records a named pass/fail line and folds it into `ok`.
  void check(const std::string& key, bool passed);
  /// Value of `key`; throws std::out_of_range when absent.
  const std::string& get(const std::string& key) const;
};

/// Shortest round-trip decimal form; used for every number written to disk.
std::string format_number(double v);

class DiagnosticsSeries {
 public:
  /// Column names, "t" first.
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// The first append fixes the column set; later ones must match it.
  void append(double t, const NamedValues& values);

  bool has(const std::string& name) const;
  /// Throws std::out_of_range for an unknown column.
  std::vector<double> column(const std::string& name) const;
  std::vector<double> times() const { return column("t"); }

  /// Commented header documenting each column, then one row per sample.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::string& path) const;
  static DiagnosticsSeries read_csv(std::istream& is);

 private:
  std::size_t index_of(const std::string& name) const;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Everything sampled at one diagnostic time: energy and BD budgets, mass,
/// divergence of B, density extrema, sup |div u|, the Lorentz splitting and
/// the a-priori norms.
NamedValues sample_diagnostics(const Model& model, const State& state);

/// One-line description of a known column, empty for unknown names.
std::string describe_column(const std::string& name);

}  // namespace qmhd
