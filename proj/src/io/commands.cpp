#include "qmhd/io/commands.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "qmhd/diagnostics/audits.hpp"
#include "qmhd/errors.hpp"
#include "qmhd/io/initial.hpp"
#include "qmhd/io/report.hpp"
#include "qmhd/spectral/snapshot.hpp"
#include "qmhd/verify/suite.hpp"

namespace qmhd {

namespace fs = std::filesystem;

namespace {

using ModeMap = std::map<std::pair<int, int>, std::complex<double>>;

ModeMap modes_of(const ScalarField& f) {
  const Grid& g = f.grid();
  const Spectral sp(g);
  const Spectrum s = sp.forward(f);
  ModeMap m;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    const int kx = sp.kx(i), ky = sp.ky(i);
    if (2 * kx >= g.nx() || 2 * std::abs(ky) >= g.ny()) continue;
    m[{kx, ky}] = s[i];
  }
  return m;
}

State read_resume(const std::string& path, const RunConfig& config, const Model& model) {
  Checkpoint ck;
  try {
    ck = load_checkpoint(path, model.galerkin());
  } catch (const FormatError& e) {
    throw ConfigError("checkpoint '" + path + "': " + e.what());
  }
  std::istringstream is(ck.params_text);
  RunConfig stored;
  try {
    stored = parse_config(is, path + " (stored parameters)", false);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("checkpoint parameters unreadable: ") + e.what());
  }
  if (stored.nx != config.nx || stored.ny != config.ny ||
      stored.resolved_regularization().n_modes != config.resolved_regularization().n_modes)
    throw ConfigError("checkpoint '" + path + "' was written for a different grid or Galerkin space");
  return std::move(ck.state);
}

DiagnosticsSeries truncated_series(const fs::path& csv, double t_cut) {
  DiagnosticsSeries kept;
  std::ifstream is(csv);
  if (!is) return kept;
  const DiagnosticsSeries old = DiagnosticsSeries::read_csv(is);
  const double tol = 1e-12 * std::max(1.0, std::fabs(t_cut));
  for (const auto& row : old.rows()) {
    if (row[0] >= t_cut - tol) break;
    NamedValues v;
    for (std::size_t c = 1; c < row.size(); ++c) v.emplace_back(old.columns()[c], row[c]);
    kept.append(row[0], v);
  }
  return kept;
}

std::vector<Report> audit_reports(const DiagnosticsSeries& series) {
  std::vector<Report> out;
  if (series.size() < 2) return out;
  out.push_back(check_energy_inequality(series).report("energy_balance"));
  out.push_back(bd_identity_residual(series).report("bd_balance"));
  out.push_back(check_lorentz_split(series));
  out.push_back(apriori_bounds_report(series));
  return out;
}

Report run_summary(const RunOutcome& r) {
  Report rep;
  rep.title = "run";
  rep.add("steps", r.steps);
  rep.add("t_final", r.final.t);
  rep.add("samples", static_cast<long>(r.series.size()));
  if (!r.series.empty()) {
    const auto mass = r.series.column("mass");
    rep.add("mass_drift_rel", std::fabs(mass.back() - mass.front()) / std::fabs(mass.front()));
    const auto div_b = r.series.column("div_B_l2");
    double m = 0.0;
    for (double v : div_b) m = std::max(m, v);
    rep.add("div_B_l2_max", m);
  }
  return rep;
}

}  // namespace

double field_distance(const ScalarField& a, const ScalarField& b) {
  ModeMap ma = modes_of(a);
  for (const auto& [k, v] : modes_of(b)) ma[k] -= v;
  // kx = 0 modes are stored for both signs of ky; the others stand for a conjugate pair.
  double s = 0.0;
  for (const auto& [k, v] : ma) s += (k.first == 0 ? 1.0 : 2.0) * std::norm(v);
  return 2.0 * M_PI * std::sqrt(s);
}

double field_distance(const VectorField& a, const VectorField& b) {
  return std::hypot(field_distance(a.x, b.x), field_distance(a.y, b.y));
}

RunOutcome execute_run(const RunConfig& config, const std::string& resume_path, bool write_files) {
  config.validate();
  const bool files = write_files && !config.output_dir.empty();
  const fs::path dir = config.output_dir;
  if (files) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }

  const Grid grid(config.nx, config.ny);
  const Model model(grid, config.constitutive, config.resolved_regularization());
  const std::string params = to_ini(config);

  RunOutcome out;
  State initial;
  if (!resume_path.empty()) {
    initial = read_resume(resume_path, config, model);
    if (files) out.series = truncated_series(dir / "series.csv", initial.t);
    Report r = finite_energy_audit(model, initial);
    r.title = "resumed_state";
    r.add("resumed_from", resume_path);
    r.add("resumed_step", initial.step);
    out.reports.push_back(std::move(r));
  } else {
    InitialCondition ic = generate_ic(config.initial, model, config.solver.density_floor);
    initial = std::move(ic.state);
    out.reports.push_back(std::move(ic.audit));
  }

  if (files) {
    std::ofstream os(dir / "config.ini", std::ios::trunc);
    os << params;
  }

  long samples = 0;
  RunSettings settings;
  settings.cadence = config.cadence;
  settings.on_sample = [&](const State& s) {
    out.series.append(s.t, sample_diagnostics(model, s));
    ++samples;
    if (files && config.checkpoint_every > 0 && samples % config.checkpoint_every == 0)
      save_checkpoint((dir / "checkpoint.bin").string(), s, params);
  };
  settings.on_failure = [&](const State& s) {
    if (!files) return;
    save_checkpoint((dir / "checkpoint_last_good.bin").string(), s, params);
    out.series.write_csv((dir / "series.csv").string());
  };

  RunResult result = run(model, std::move(initial), config.solver, settings);
  out.final = std::move(result.final);
  out.steps = result.steps;
  for (Report& r : audit_reports(out.series)) out.reports.push_back(std::move(r));
  out.reports.insert(out.reports.begin(), run_summary(out));

  if (files) {
    out.series.write_csv((dir / "series.csv").string());
    save_checkpoint((dir / "checkpoint.bin").string(), out.final, params);
    if (config.final_snapshot) {
      Snapshot snap;
      snap.time = out.final.t;
      snap.grid = grid;
      const VectorField& u = out.final.u.field();
      snap.fields = {{"n", out.final.n}, {"ux", u.x}, {"uy", u.y}, {"Bx", out.final.b.x}, {"By", out.final.b.y}};
      save_snapshot((dir / "final.snap").string(), snap);
    }
    write_reports((dir / "report.txt").string(), out.reports);
  }
  return out;
}

std::vector<SweepCell> expand_sweep(const SweepConfig& sweep) {
  const RunConfig& base = sweep.base;
  auto axis = [](const std::vector<double>& v, double fallback) {
    return v.empty() ? std::vector<double>{fallback} : v;
  };
  const auto gammas = axis(sweep.gamma, base.constitutive.gamma);
  const auto alphas = axis(sweep.alpha, base.constitutive.alpha);
  const auto epss = axis(sweep.epsilon, base.regularization.epsilon);
  const auto lambdas = axis(sweep.lambda_reg, base.regularization.lambda_reg);
  const auto dts = axis(sweep.dt, base.solver.dt);
  const std::vector<int> ns = sweep.n.empty() ? std::vector<int>{base.nx} : sweep.n;

  std::vector<SweepCell> cells;
  for (double g : gammas)
    for (double a : alphas)
      for (double e : epss)
        for (double l : lambdas)
          for (int n : ns)
            for (double dt : dts) {
              SweepCell c;
              c.index = cells.size();
              c.gamma = g, c.alpha = a, c.epsilon = e, c.lambda_reg = l, c.n = n, c.dt = dt;
              c.config = base;
              c.config.constitutive.gamma = g;
              c.config.constitutive.alpha = a;
              c.config.regularization.epsilon = e;
              c.config.regularization.lambda_reg = l;
              c.config.solver.dt = dt;
              if (!sweep.n.empty()) {
                c.config.nx = c.config.ny = n;
                c.config.regularization.n_modes = 0;
              }
              cells.push_back(std::move(c));
            }
  return cells;
}

std::size_t SweepSummary::failed() const {
  std::size_t k = 0;
  for (const auto& c : cells) k += c.ok ? 0 : 1;
  return k;
}

void SweepSummary::write_csv(std::ostream& os) const {
  os << "# cell: index in expansion order\n"
     << "# cauchy_u: ||u_2N - u_N||_2 against the cell with doubled N\n"
     << "# limit_distance: ||(n, u, B) - (n, u, B)_0||_2 against eps = lambda = 0\n"
     << "cell,gamma,alpha,epsilon,lambda,n,dt,status,steps,t_final,mass_drift,energy_final,cauchy_u,"
        "limit_distance,message\n";
  for (const SweepCellResult& r : cells) {
    const SweepCell& c = r.cell;
    std::string msg = r.message;
    for (char& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    os << c.index << ',' << format_number(c.gamma) << ',' << format_number(c.alpha) << ','
       << format_number(c.epsilon) << ',' << format_number(c.lambda_reg) << ',' << c.n << ','
       << format_number(c.dt) << ',' << (r.ok ? "ok" : "failed") << ',' << r.steps << ','
       << format_number(r.ok ? r.final.t : std::nan("")) << ',' << format_number(r.mass_drift) << ','
       << format_number(r.energy_final) << ',' << format_number(r.cauchy_u) << ','
       << format_number(r.limit_distance) << ',' << msg << '\n';
  }
}

SweepSummary execute_sweep(const SweepConfig& sweep, const std::string& output_dir, int jobs) {
  const std::vector<SweepCell> cells = expand_sweep(sweep);
  SweepSummary summary;
  summary.cells.resize(cells.size());
  const fs::path dir = output_dir;
  const bool files = !output_dir.empty();
  std::ofstream progress;
  if (files) {
    fs::create_directories(dir);
    progress.open(dir / "progress.csv", std::ios::trunc);
    progress << "cell,status,steps,message\n" << std::flush;
  }
  std::mutex progress_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SweepCellResult& r = summary.cells[i];
      r.cell = cells[i];
      RunConfig cfg = cells[i].config;
      cfg.output_dir = files ? (dir / ("cell_" + std::to_string(i))).string() : std::string();
      try {
        RunOutcome o = execute_run(cfg, "", files);
        const auto mass = o.series.column("mass");
        r.mass_drift = std::fabs(mass.back() - mass.front()) / std::fabs(mass.front());
        r.energy_final = o.series.column("E_total").back();
        r.steps = o.steps;
        r.final = std::move(o.final);
        r.ok = true;
      } catch (const std::exception& e) {
        r.ok = false;
        r.message = e.what();
      }
      if (files) {
        std::lock_guard lock(progress_mutex);
        std::string msg = r.message;
        for (char& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        progress << i << ',' << (r.ok ? "ok" : "failed") << ',' << r.steps << ',' << msg << '\n' << std::flush;
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (SweepCellResult& r : summary.cells) {
    r.cauchy_u = nan;
    r.limit_distance = nan;
    if (!r.ok) continue;
    const SweepCell& c = r.cell;
    for (const SweepCellResult& o : summary.cells) {
      if (!o.ok) continue;
      const SweepCell& d = o.cell;
      const bool same_physics = d.gamma == c.gamma && d.alpha == c.alpha && d.dt == c.dt;
      if (same_physics && d.epsilon == c.epsilon && d.lambda_reg == c.lambda_reg && d.n == 2 * c.n)
        r.cauchy_u = field_distance(o.final.u.field(), r.final.u.field());
      if (same_physics && d.n == c.n && d.epsilon == 0.0 && d.lambda_reg == 0.0) {
        const double dn = field_distance(o.final.n, r.final.n);
        const double du = field_distance(o.final.u.field(), r.final.u.field());
        const double db = field_distance(o.final.b, r.final.b);
        r.limit_distance = std::sqrt(dn * dn + du * du + db * db);
      }
    }
  }
  if (files) {
    std::ofstream os(dir / "summary.csv", std::ios::trunc);
    summary.write_csv(os);
  }
  return summary;
}

namespace {

void apply_overrides(RunConfig& c, const std::string& output_dir, long seed, int cadence) {
  if (!output_dir.empty()) c.output_dir = output_dir;
  if (seed >= 0) c.initial.seed = static_cast<std::uint64_t>(seed);
  if (cadence > 0) c.cadence = cadence;
}

}  // namespace

int run_command(const std::string& config_path, const std::string& resume_path, const std::string& output_dir,
                long seed, int cadence, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    apply_overrides(cfg, output_dir, seed, cadence);
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    const RunOutcome o = execute_run(cfg, resume_path);
    for (const Report& r : o.reports) write_report(out, r);
    out << "output written to " << cfg.output_dir << '\n';
    return kExitSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

int sweep_command(const std::string& sweep_path, int jobs, const std::string& output_dir, long seed, int cadence,
                  std::ostream& out, std::ostream& err) {
  SweepConfig sweep;
  try {
    sweep = load_sweep(sweep_path);
    apply_overrides(sweep.base, output_dir, seed, cadence);
    sweep.base.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const int workers = jobs > 0 ? jobs : sweep.jobs;
  const SweepSummary s = execute_sweep(sweep, sweep.base.output_dir, workers);
  s.write_csv(out);
  if (s.failed() > 0) {
    err << s.failed() << " of " << s.cells.size() << " cells failed\n";
    return kExitFailure;
  }
  return kExitSuccess;
}

int verify_command(bool fast, const std::string& output_dir, long seed, std::ostream& out, std::ostream& err) {
  SuiteOptions opts;
  opts.fast = fast;
  if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);
  std::vector<Report> reports;
  const auto results = run_suite(opts, [&](const CriterionResult& r) { out << format_result(r) << '\n' << std::flush; });
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    reports.push_back(r.report);
  }
  if (!output_dir.empty()) {
    try {
      fs::create_directories(output_dir);
      write_reports((fs::path(output_dir) / "verify_report.txt").string(), reports);
    } catch (const std::exception& e) {
      err << "cannot write verify report: " << e.what() << '\n';
      return kExitFailure;
    }
  }
  if (!ok) err << "verification failed\n";
  return ok ? kExitSuccess : kExitFailure;
}

}  // namespace qmhd
