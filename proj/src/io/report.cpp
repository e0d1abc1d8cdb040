#include "qmhd/io/report.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "qmhd/errors.hpp"

namespace qmhd {

void write_report(std::ostream& os, const Report& report) {
  os << '[' << report.title << "]\n";
  for (const auto& [k, v] : report.entries) os << k << " = " << v << '\n';
}

void write_reports(const std::string& path, const std::vector<Report>& reports) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write report '" + path + "'");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) os << '\n';
    write_report(os, reports[i]);
  }
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<Report> read_reports(std::istream& is) {
  std::vector<Report> out;
  std::string line;
  unsigned long no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      out.emplace_back();
      out.back().title = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find(" = ");
    if (out.empty() || eq == std::string::npos) throw FormatError("malformed report line " + std::to_string(no));
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 3);
    if (value == "pass" || value == "fail")
      out.back().check(key, value == "pass");
    else
      out.back().add(key, value);
  }
  return out;
}

}  // namespace qmhd
