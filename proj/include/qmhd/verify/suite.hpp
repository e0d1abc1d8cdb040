#pragma once

// Property suite behind `verify` and the acceptance binary: one check per
// acceptance criterion, each returning a pass/fail line and a report.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmhd/diagnostics/series.hpp"

namespace qmhd {

struct SuiteOptions {
  /// Smaller grids and shorter runs; tolerances are unchanged.
  bool fast = false;
  std::uint64_t seed = 7;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// One-line summary of the measured quantities.
  std::string summary;
  Report report;
  double seconds = 0.0;
};

constexpr int kCriterionCount = 12;

/// Runs criterion `id` in [1, kCriterionCount]; exceptions become failures.
CriterionResult run_criterion(int id, const SuiteOptions& options);

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 conservation: ..." style line.
std::string format_result(const CriterionResult& result);

}  // namespace qmhd
