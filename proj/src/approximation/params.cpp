#include "qmhd/approximation/params.hpp"

#include <cmath>

#include "qmhd/errors.hpp"

namespace qmhd {

void RegularizationParams::validate() const {
  if (!(epsilon >= 0.0)) throw ParameterError("epsilon must be >= 0");
  if (!(lambda_reg >= 0.0)) throw ParameterError("lambda_reg must be >= 0");
  if (s < 1) throw ParameterError("s must be >= 1");
  if (n_modes < 1) throw ParameterError("n_modes must be >= 1");
}

Integrator parse_integrator(const std::string& name) {
  if (name == "rk4") return Integrator::rk4;
  if (name == "imex") return Integrator::imex;
  throw ParameterError("unknown integrator '" + name + "' (expected rk4 or imex)");
}

std::string to_string(Integrator integrator) { return integrator == Integrator::rk4 ? "rk4" : "imex"; }

void SolverOptions::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be > 0");
  if (!(t_end >= 0.0)) throw ParameterError("t_end must be >= 0");
  if (!(fp_tol > 0.0)) throw ParameterError("fp_tol must be > 0");
  if (fp_max_iters < 1) throw ParameterError("fp_max_iters must be >= 1");
  if (!(density_floor > 0.0)) throw ParameterError("density_floor must be > 0");
  if (!(mass_tol > 0.0)) throw ParameterError("mass_tol must be > 0");
  if (mass_max_iters < 1) throw ParameterError("mass_max_iters must be >= 1");
}

}  // namespace qmhd
