#pragma once

// Reports on disk: one INI-style section per report,
//   [title]
//   key = value

#include <iosfwd>
#include <string>
#include <vector>

#include "qmhd/diagnostics/series.hpp"

namespace qmhd {

void write_report(std::ostream& os, const Report& report);
void write_reports(const std::string& path, const std::vector<Report>& reports);
/// Inverse of write_reports; `ok` is recomputed from the pass/fail entries.
std::vector<Report> read_reports(std::istream& is);

}  // namespace qmhd
