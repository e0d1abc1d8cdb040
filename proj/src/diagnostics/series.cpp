#include "qmhd/diagnostics/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qmhd/diagnostics/audits.hpp"
#include "qmhd/errors.hpp"

namespace qmhd {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Report::add(const std::string& key, double value) { entries.emplace_back(key, format_number(value)); }
void Report::add(const std::string& key, long value) { entries.emplace_back(key, std::to_string(value)); }
void Report::add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }

void Report::check(const std::string& key, bool passed) {
  entries.emplace_back(key, passed ? "pass" : "fail");
  ok = ok && passed;
}

const std::string& Report::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  throw std::out_of_range("report '" + title + "' has no key '" + key + "'");
}

void DiagnosticsSeries::append(double t, const NamedValues& values) {
  if (columns_.empty()) {
    columns_.push_back("t");
    for (const auto& [name, v] : values) columns_.push_back(name);
  } else if (columns_.size() != values.size() + 1) {
    throw std::invalid_argument("diagnostic sample has a different column set");
  }
  std::vector<double> row;
  row.reserve(values.size() + 1);
  row.push_back(t);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first != columns_[i + 1])
      throw std::invalid_argument("diagnostic column '" + values[i].first + "' out of order");
    row.push_back(values[i].second);
  }
  rows_.push_back(std::move(row));
}

std::size_t DiagnosticsSeries::index_of(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("series has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

bool DiagnosticsSeries::has(const std::string& name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

std::vector<double> DiagnosticsSeries::column(const std::string& name) const {
  const std::size_t c = index_of(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[c]);
  return out;
}

void DiagnosticsSeries::write_csv(std::ostream& os) const {
  os << "# qmhd diagnostic series\n";
  for (const auto& c : columns_) {
    const std::string d = describe_column(c);
    os << "# " << c;
    if (!d.empty()) os << ": " << d;
    os << '\n';
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
    os << '\n';
  }
}

void DiagnosticsSeries::write_csv(const std::string& path) const {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  write_csv(os);
  if (!os) throw FormatError("failed writing '" + path + "'");
}

DiagnosticsSeries DiagnosticsSeries::read_csv(std::istream& is) {
  DiagnosticsSeries s;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      s.columns_ = cells;
      header = true;
      continue;
    }
    if (cells.size() != s.columns_.size()) throw FormatError("CSV row has " + std::to_string(cells.size()) + " cells");
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc()) throw FormatError("bad number '" + c + "' in CSV");
      row.push_back(v);
    }
    s.rows_.push_back(std::move(row));
  }
  return s;
}

NamedValues sample_diagnostics(const Model& model, const State& state) {
  const Spectral& sp = model.spectral();
  NamedValues out;
  out.emplace_back("mass", sp.integral(state.n));
  out.emplace_back("div_B_l2", sp.norm_l2(sp.div(state.b)));
  out.emplace_back("n_min", state.n.min());
  out.emplace_back("n_max", state.n.max());
  const ScalarField div_u = sp.div(state.u.field());
  out.emplace_back("div_u_sup", std::max(std::fabs(div_u.min()), std::fabs(div_u.max())));
  out.emplace_back("u_l2", sp.norm_l2(state.u.field()));
  for (const auto& kv : total_energy(model, state).lines()) out.push_back(kv);
  for (const auto& kv : bd_budget(model, state).lines()) out.push_back(kv);
  const LorentzSplit ls = lorentz_split(model, state);
  out.emplace_back("L_split_lhs", ls.lhs);
  out.emplace_back("L_split_rhs", ls.rhs);
  for (const auto& kv : apriori_norms(model, state)) out.push_back(kv);
  return out;
}

std::string describe_column(const std::string& name) {
  static const std::map<std::string, std::string> table = {
      {"t", "time"},
      {"mass", "int n"},
      {"div_B_l2", "||div B||_2"},
      {"n_min", "min n"},
      {"n_max", "max n"},
      {"div_u_sup", "||div u||_inf"},
      {"u_l2", "||u||_2"},
      {"E_kinetic", "1/2 int n |u|^2"},
      {"E_internal", "int H(n)"},
      {"E_cold", "int H_c(n)"},
      {"E_quantum", "hbar^2/4 int |grad phi(n)|^2"},
      {"E_magnetic", "1/2 int |B|^2"},
      {"E_hyper", "lambda/2 int |grad^(2s+1) n|^2"},
      {"E_total", "total energy"},
      {"D_visc_shear", "2 int mu |D(u)|^2"},
      {"D_visc_bulk", "int lambda(n) (div u)^2 (signed)"},
      {"D_eps_pressure", "eps int (P'+P_c')/n |grad n|^2"},
      {"D_resistive", "int nu_b |curl B|^2"},
      {"D_hyper_momentum", "lambda int |Lap^s grad(n u)|^2"},
      {"D_hyper_density", "lambda eps int |Lap^(s+1) n|^2"},
      {"D_eps_quantum", "eps hbar^2/2 int phi' Lap phi Lap n (signed)"},
      {"D_total", "sum of energy dissipation lines"},
      {"BD_functional", "energy with kinetic part 1/2 int n |u + grad phi_BD|^2"},
      {"BD_shear_antisym", "2 int mu |A(u)|^2"},
      {"BD_quantum", "hbar^2 int phi' Lap phi Lap mu"},
      {"BD_resistive", "int nu_b |curl B|^2"},
      {"BD_pressure_drift", "-<pressure force, grad phi_BD>, i.e. 2 int mu' (P'+P_c') |grad n|^2 / n"},
      {"BD_hyper_momentum", "lambda int |Lap^s grad(n u)|^2"},
      {"BD_hyper_density", "lambda eps int |Lap^(s+1) n|^2"},
      {"BD_eps_pressure", "eps int (P'+P_c')/n |grad n|^2"},
      {"BD_eps_quantum", "eps hbar^2/2 int phi' Lap phi Lap n"},
      {"BD_lorentz_drift", "int (curl B) x B . grad phi_BD (production)"},
      {"BD_hyper_drift", "int F_hyper . grad phi_BD (production)"},
      {"BD_eps_mass", "-eps int div(n u) phi_BD' Lap n (production)"},
      {"BD_eps_drift_sq", "eps/2 int |grad phi_BD|^2 Lap n (production)"},
      {"BD_eps_convect", "-eps int (grad n . grad) u . grad phi_BD (production)"},
      {"BD_eps_potential", "eps int n grad phi_BD . grad(phi_BD' Lap n) (production)"},
      {"BD_hyper_alternative", "lambda int mu' Lap mu Lap^s mu (reported, not balanced)"},
      {"BD_dissipation", "dissipative minus production lines"},
      {"L_split_lhs", "|2 int j (grad mu x B) / n|"},
      {"L_split_rhs", "int j^2/(w n^2) + w int (grad mu x B)^2"},
      {"N_n_gamma", "||n||_{L^gamma}"},
      {"N_n_gamma_minus", "||n||_{L^gamma_minus}"},
      {"N_grad_phi", "||grad phi(n)||_2"},
      {"N_eps_cold", "sqrt(eps) ||n^-1/2 sqrt(P_c') grad n||_2"},
      {"N_sqrt_n_u", "||sqrt(n) u||_2"},
      {"N_sqrt_mu_Du", "||sqrt(mu) D(u)||_2"},
      {"N_lambda_momentum", "sqrt(lambda) ||Lap^s grad(n u)||_2"},
      {"N_lambda_density", "sqrt(lambda) ||grad^(2s+1) n||_2"},
      {"N_lap_mu", "||Lap mu(n)||_2"},
      {"N_grad_inv_sqrt_n", "||grad(n^-1/2)||_2"},
      {"N_inv_n_sup", "||1/n||_inf"},
  };
  const auto it = table.find(name);
  return it == table.end() ? std::string() : it->second;
}

}  // namespace qmhd
