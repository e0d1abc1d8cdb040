#include "qmhd/approximation/simulation.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qmhd/errors.hpp"
#include "qmhd/spectral/snapshot.hpp"

namespace qmhd {

namespace {

constexpr char kCheckpointMagic[8] = {'Q', 'M', 'H', 'D', 'C', 'K', 'P', 'T'};

}  // namespace

long steps_to(double t, double t_end, double dt) {
  if (!(t_end > t)) return 0;
  const double q = (t_end - t) / dt;
  const long whole = static_cast<long>(std::floor(q));
  return (q - whole > 1e-9) ? whole + 1 : std::max(whole, 1L);
}

void check_finite(const State& state) {
  if (!state.n.all_finite() || !state.u.field().all_finite() || !state.b.all_finite()) {
    std::ostringstream os;
    os << "non-finite field at t=" << state.t << " (step " << state.step << ")";
    throw BlowUpError(os.str());
  }
}

RunResult run(const Model& model, State initial, const SolverOptions& options, const RunSettings& settings) {
  options.validate();
  const int cadence = std::max(1, settings.cadence);
  RunResult result;
  const long step0 = initial.step;
  // Step times are tied to the absolute step index so a resumed run retraces
  // the uninterrupted one exactly.
  double origin = initial.t - static_cast<double>(step0) * options.dt;
  if (std::fabs(origin) <= 1e-9 * std::max(1.0, std::fabs(initial.t))) origin = 0.0;
  const long n_steps = steps_to(initial.t, options.t_end, options.dt);
  State current = std::move(initial);

  auto sample = [&](const State& s) {
    if (settings.on_sample) settings.on_sample(s);
    if (settings.store_trajectory) result.trajectory.push_back(s);
  };

  sample(current);
  for (long k = 1; k <= n_steps; ++k) {
    const double t_next =
        (k == n_steps) ? options.t_end : origin + static_cast<double>(step0 + k) * options.dt;
    const double h = t_next - current.t;
    State next;
    try {
      next = step(model, current, h, options);
      check_finite(next);
      if (!(next.n.min() >= options.density_floor)) {
        std::ostringstream os;
        os << "density minimum " << next.n.min() << " fell below floor " << options.density_floor
           << " at t=" << next.t;
        throw PositivityError(os.str());
      }
    } catch (...) {
      if (settings.on_failure) settings.on_failure(current);
      throw;
    }
    next.t = t_next;
    next.step = step0 + k;
    current = std::move(next);
    ++result.steps;
    if ((step0 + k) % cadence == 0 || k == n_steps) sample(current);
  }
  result.final = std::move(current);
  return result;
}

void save_checkpoint(const std::string& path, const State& state, const std::string& params_text) {
  Snapshot snap{state.t, state.n.grid(),
                {{"n", state.n},
                 {"ux", state.u.field().x},
                 {"uy", state.u.field().y},
                 {"Bx", state.b.x},
                 {"By", state.b.y}}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open checkpoint '" + tmp + "' for writing");
    write_snapshot(os, snap);
    os.write(kCheckpointMagic, sizeof kCheckpointMagic);
    binary::write_u64(os, static_cast<std::uint64_t>(state.step));
    binary::write_u32(os, static_cast<std::uint32_t>(params_text.size()));
    os.write(params_text.data(), static_cast<std::streamsize>(params_text.size()));
    const Coefficients& c = state.u.coefficients();
    binary::write_u32(os, static_cast<std::uint32_t>(c.size()));
    for (double v : c) binary::write_f64(os, v);
    if (!os) throw FormatError("failed writing checkpoint '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw FormatError("cannot move checkpoint into '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path, const GalerkinSpace& space) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open checkpoint '" + path + "'");
  const Snapshot snap = read_snapshot(is);
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0)
    throw FormatError("'" + path + "' is a snapshot without a checkpoint block");
  Checkpoint ck;
  ck.state.step = static_cast<long>(binary::read_u64(is));
  const std::uint32_t len = binary::read_u32(is);
  ck.params_text.resize(len);
  is.read(ck.params_text.data(), len);
  const std::uint32_t count = binary::read_u32(is);
  if (!is) throw FormatError("truncated checkpoint '" + path + "'");
  if (count != space.dofs()) {
    std::ostringstream os;
    os << "checkpoint holds " << count << " velocity coefficients, model expects " << space.dofs();
    throw FormatError(os.str());
  }
  Coefficients c(count);
  for (double& v : c) v = binary::read_f64(is);
  if (!is) throw FormatError("truncated checkpoint '" + path + "'");
  if (!(snap.grid == space.spectral().grid())) throw FormatError("checkpoint grid differs from the model grid");
  ck.state.t = snap.time;
  ck.state.n = snap.get("n");
  ck.state.b = VectorField{snap.get("Bx"), snap.get("By")};
  ck.state.u = GalerkinVelocity(space, std::move(c));
  return ck;
}

}  // namespace qmhd
