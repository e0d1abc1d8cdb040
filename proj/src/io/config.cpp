#include "qmhd/io/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "qmhd/diagnostics/series.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/spectral/galerkin.hpp"
#include "qmhd/spectral/spectral.hpp"

namespace qmhd {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected a number, got '" + text + "'");
  return v;
}

long to_long(const std::string& text) {
  const std::string s = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  return v;
}

int to_int(const std::string& text) {
  const long v = to_long(text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw std::invalid_argument("integer out of range: '" + text + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + text + "'");
}

std::uint64_t to_u64(const std::string& text) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
  return v;
}

struct Binding {
  ConfigKey key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define QMHD_DOUBLE(sec, name, member, doc)                                                       \
  Binding {                                                                                       \
    {sec, name, doc}, [](RunConfig& c, const std::string& v) { c.member = to_double(v); },        \
        [](const RunConfig& c) { return format_number(c.member); }                                \
  }
#define QMHD_INT(sec, name, member, doc)                                                          \
  Binding {                                                                                       \
    {sec, name, doc}, [](RunConfig& c, const std::string& v) { c.member = to_int(v); },           \
        [](const RunConfig& c) { return std::to_string(c.member); }                               \
  }
#define QMHD_BOOL(sec, name, member, doc)                                                         \
  Binding {                                                                                       \
    {sec, name, doc}, [](RunConfig& c, const std::string& v) { c.member = to_bool(v); },          \
        [](const RunConfig& c) { return std::string(c.member ? "true" : "false"); }               \
  }

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      QMHD_INT("grid", "nx", nx, "collocation points in x (even, >= 8)"),
      QMHD_INT("grid", "ny", ny, "collocation points in y (even, >= 8)"),

      QMHD_DOUBLE("constitutive", "gamma", constitutive.gamma, "adiabatic exponent, > 1"),
      QMHD_DOUBLE("constitutive", "gamma_minus", constitutive.gamma_minus, "cold-pressure exponent below n = 1"),
      QMHD_DOUBLE("constitutive", "c1", constitutive.c1, "cold-pressure constant below n = 1"),
      QMHD_DOUBLE("constitutive", "c2", constitutive.c2, "cold-pressure constant above n = 1"),
      QMHD_DOUBLE("constitutive", "mu0", constitutive.mu0, "shear viscosity mu = mu0 n^alpha"),
      QMHD_DOUBLE("constitutive", "alpha", constitutive.alpha, "viscosity and dispersion exponent"),
      QMHD_DOUBLE("constitutive", "hbar", constitutive.hbar, "scaled Planck constant"),
      QMHD_DOUBLE("constitutive", "d0", constitutive.resistivity.d0, "resistivity: small-density lower constant"),
      QMHD_DOUBLE("constitutive", "d0p", constitutive.resistivity.d0p, "resistivity: small-density upper constant"),
      QMHD_DOUBLE("constitutive", "d1", constitutive.resistivity.d1, "resistivity: large-density lower constant"),
      QMHD_DOUBLE("constitutive", "d1p", constitutive.resistivity.d1p, "resistivity: large-density upper constant"),
      QMHD_DOUBLE("constitutive", "a", constitutive.resistivity.a, "resistivity: small-density lower exponent"),
      QMHD_DOUBLE("constitutive", "ap", constitutive.resistivity.ap, "resistivity: small-density upper exponent"),
      QMHD_DOUBLE("constitutive", "b", constitutive.resistivity.b, "resistivity: large-density upper exponent"),
      QMHD_DOUBLE("constitutive", "threshold", constitutive.resistivity.threshold, "resistivity: corridor hand-over density"),

      QMHD_DOUBLE("regularization", "epsilon", regularization.epsilon, "artificial density diffusion"),
      QMHD_DOUBLE("regularization", "lambda", regularization.lambda_reg, "hyper-regularization weight"),
      QMHD_INT("regularization", "s", regularization.s, "hyper-regularization order"),
      QMHD_INT("regularization", "n_modes", regularization.n_modes, "Galerkin velocity modes; 0 = all dealiased modes"),

      QMHD_DOUBLE("solver", "dt", solver.dt, "time step"),
      QMHD_DOUBLE("solver", "t_end", solver.t_end, "final time"),
      Binding{{"solver", "integrator", "rk4 or imex"},
              [](RunConfig& c, const std::string& v) { c.solver.integrator = parse_integrator(trim(v)); },
              [](const RunConfig& c) { return to_string(c.solver.integrator); }},
      QMHD_DOUBLE("solver", "fp_tol", solver.fp_tol, "implicit fixed-point relative tolerance"),
      QMHD_INT("solver", "fp_max_iters", solver.fp_max_iters, "implicit fixed-point iteration limit"),
      QMHD_DOUBLE("solver", "density_floor", solver.density_floor, "minimum admissible density"),
      QMHD_DOUBLE("solver", "mass_tol", solver.mass_tol, "mass solve relative residual"),
      QMHD_INT("solver", "mass_max_iters", solver.mass_max_iters, "mass solve iteration limit"),
      QMHD_BOOL("solver", "frozen_velocity", solver.frozen_velocity, "keep u fixed (transport only)"),

      Binding{{"initial", "kind", "constant, smooth-random, density-bump or orszag-tang-like"},
              [](RunConfig& c, const std::string& v) { c.initial.kind = trim(v); },
              [](const RunConfig& c) { return c.initial.kind; }},
      QMHD_DOUBLE("initial", "amplitude", initial.amplitude, "relative density perturbation"),
      QMHD_DOUBLE("initial", "decay", initial.decay, "spectral decay rate of random modes"),
      QMHD_INT("initial", "kmax", initial.kmax, "largest random wavenumber"),
      QMHD_DOUBLE("initial", "mean_density", initial.mean_density, "mean density, > 0"),
      QMHD_DOUBLE("initial", "mean_bx", initial.mean_bx, "mean magnetic field, x"),
      QMHD_DOUBLE("initial", "mean_by", initial.mean_by, "mean magnetic field, y"),
      QMHD_DOUBLE("initial", "velocity_amplitude", initial.velocity_amplitude, "velocity amplitude"),
      QMHD_DOUBLE("initial", "field_amplitude", initial.field_amplitude, "fluctuating magnetic field amplitude"),
      QMHD_DOUBLE("initial", "width", initial.width, "density bump width"),
      Binding{{"initial", "seed", "random seed"},
              [](RunConfig& c, const std::string& v) { c.initial.seed = to_u64(v); },
              [](const RunConfig& c) { return std::to_string(c.initial.seed); }},

      QMHD_INT("output", "cadence", cadence, "diagnostic sample every k steps"),
      QMHD_INT("output", "checkpoint_every", checkpoint_every, "checkpoint every k samples; 0 = final only"),
      Binding{{"output", "directory", "output directory"},
              [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); },
              [](const RunConfig& c) { return c.output_dir; }},
      QMHD_BOOL("output", "final_snapshot", final_snapshot, "write final field snapshot"),
  };
  return table;
}

#undef QMHD_DOUBLE
#undef QMHD_INT
#undef QMHD_BOOL

const Binding* find_binding(const std::string& section, const std::string& key) {
  for (const Binding& b : bindings())
    if (b.key.section == section && b.key.key == key) return &b;
  return nullptr;
}

// Line of each "section.key" in the raw text, for error messages.
std::map<std::string, unsigned long> key_lines(const std::string& text) {
  std::map<std::string, unsigned long> lines;
  std::istringstream is(text);
  std::string line, section;
  unsigned long no = 0;
  while (std::getline(is, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      lines.emplace(section, no);
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string::npos) lines.emplace(section + "." + trim(t.substr(0, eq)), no);
  }
  return lines;
}

pt::ptree read_tree(const std::string& text, const std::string& source) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message(), e.line());
  }
  return tree;
}

void apply_key(RunConfig& c, const Binding& b, const std::string& value, const std::string& where,
               unsigned long line) {
  try {
    b.set(c, value);
  } catch (const std::exception& e) {
    throw ConfigError(where + ": [" + b.key.section + "] " + b.key.key + ": " + e.what(), line);
  }
}

void apply_tree(RunConfig& c, const pt::ptree& tree, const std::string& source,
                const std::map<std::string, unsigned long>& lines, const std::vector<std::string>& skip = {}) {
  auto line_of = [&](const std::string& k) {
    const auto it = lines.find(k);
    return it == lines.end() ? 0UL : it->second;
  };
  for (const auto& [section, body] : tree) {
    if (std::find(skip.begin(), skip.end(), section) != skip.end()) continue;
    if (body.empty() && !body.data().empty())
      throw ConfigError(source + ": key '" + section + "' outside a section", line_of("." + section));
    for (const auto& [key, value] : body) {
      const Binding* b = find_binding(section, key);
      if (!b) throw ConfigError(source + ": unknown key [" + section + "] " + key, line_of(section + "." + key));
      apply_key(c, *b, value.data(), source, line_of(section + "." + key));
    }
  }
}

void apply_env(RunConfig& c) {
  for (const Binding& b : bindings()) {
    const std::string name = "QMHD_" + upper(b.key.section) + "_" + upper(b.key.key);
    if (const char* v = std::getenv(name.c_str())) apply_key(c, b, v, "environment " + name, 0);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse(item));
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (nx < 8 || ny < 8 || nx % 2 || ny % 2) fail("grid: nx and ny must be even and >= 8");
  if (cadence < 1) fail("output: cadence must be >= 1");
  if (checkpoint_every < 0) fail("output: checkpoint_every must be >= 0");
  const ICSpec& ic = initial;
  if (ic.kind != "constant" && ic.kind != "smooth-random" && ic.kind != "density-bump" &&
      ic.kind != "orszag-tang-like")
    fail("initial: unknown kind '" + ic.kind + "'");
  if (!(ic.mean_density > 0.0)) fail("initial: mean_density must be > 0");
  if (!(ic.amplitude >= 0.0 && ic.amplitude < 1.0)) fail("initial: amplitude must lie in [0, 1)");
  if (ic.kmax < 1) fail("initial: kmax must be >= 1");
  if (!(ic.width > 0.0)) fail("initial: width must be > 0");
  if (regularization.n_modes < 0) fail("regularization: n_modes must be >= 0");
  try {
    constitutive.validate();
    resolved_regularization().validate();
    solver.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  const int max_modes = GalerkinSpace::max_modes(Grid(nx, ny));
  if (regularization.n_modes > max_modes)
    fail("regularization: n_modes exceeds " + std::to_string(max_modes) + " available on this grid");
}

RegularizationParams RunConfig::resolved_regularization() const {
  RegularizationParams r = regularization;
  if (r.n_modes == 0) r.n_modes = GalerkinSpace::max_modes(Grid(nx, ny));
  return r;
}

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const Binding& b : bindings()) k.push_back(b.key);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::istream& is, const std::string& source, bool use_env) {
  std::ostringstream os;
  os << is.rdbuf();
  const std::string text = os.str();
  RunConfig c;
  apply_tree(c, read_tree(text, source), source, key_lines(text));
  if (use_env) apply_env(c);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path, bool use_env) {
  std::istringstream is(read_file(path));
  return parse_config(is, path, use_env);
}

std::string to_ini(const RunConfig& config) {
  std::ostringstream os;
  std::string section;
  for (const Binding& b : bindings()) {
    if (b.key.section != section) {
      if (!section.empty()) os << '\n';
      section = b.key.section;
      os << '[' << section << "]\n";
    }
    os << b.key.key << " = " << b.get(config) << '\n';
  }
  return os.str();
}

std::size_t SweepConfig::cells() const {
  auto len = [](std::size_t s) { return std::max<std::size_t>(s, 1); };
  return len(gamma.size()) * len(alpha.size()) * len(epsilon.size()) * len(lambda_reg.size()) * len(n.size()) *
         len(dt.size());
}

SweepConfig parse_sweep(std::istream& is, const std::string& base_dir, const std::string& source, bool use_env) {
  std::ostringstream os;
  os << is.rdbuf();
  const std::string text = os.str();
  const pt::ptree tree = read_tree(text, source);
  const auto lines = key_lines(text);
  const auto sweep_it = tree.find("sweep");
  if (sweep_it == tree.not_found()) throw ConfigError(source + ": missing [sweep] section");
  const pt::ptree& sw = sweep_it->second;

  SweepConfig s;
  if (auto base = sw.get_optional<std::string>("base")) {
    std::filesystem::path p = trim(*base);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    const std::string base_text = read_file(p.string());
    apply_tree(s.base, read_tree(base_text, p.string()), p.string(), key_lines(base_text));
  }
  apply_tree(s.base, tree, source, lines, {"sweep"});
  if (use_env) apply_env(s.base);

  for (const auto& [key, value] : sw) {
    const auto it = lines.find("sweep." + key);
    const unsigned long line = it == lines.end() ? 0 : it->second;
    try {
      const std::string& v = value.data();
      if (key == "base") continue;
      if (key == "gamma") s.gamma = parse_list<double>(v, to_double);
      else if (key == "alpha") s.alpha = parse_list<double>(v, to_double);
      else if (key == "epsilon") s.epsilon = parse_list<double>(v, to_double);
      else if (key == "lambda") s.lambda_reg = parse_list<double>(v, to_double);
      else if (key == "dt") s.dt = parse_list<double>(v, to_double);
      else if (key == "n") s.n = parse_list<int>(v, to_int);
      else if (key == "jobs") s.jobs = to_int(v);
      else throw std::invalid_argument("unknown sweep key");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source + ": [sweep] " + key + ": " + e.what(), line);
    }
  }
  if (s.jobs < 1) throw ConfigError(source + ": [sweep] jobs must be >= 1");
  s.base.validate();
  return s;
}

SweepConfig load_sweep(const std::string& path, bool use_env) {
  std::istringstream is(read_file(path));
  return parse_sweep(is, std::filesystem::path(path).parent_path().string(), path, use_env);
}

}  // namespace qmhd
