#pragma once

#include "qhe/density_matrix.hpp"
#include "qhe/engine_params.hpp"

namespace qhe {

struct Observables {
  double power = 0.0;
  double hot_heat_flux = 0.0;
  double efficiency = 0.0;
  double coherence_current = 0.0;
};

// s = i[(rho_01 - rho_10) + (rho_02 - rho_20)], a real number for any
// Hermitian state (equal to 2 Im rho_10 + 2 Im rho_20).
double coherence_current(const DensityMatrix& state);

// P = (omega_h - omega_c) * lambda * s
double power_from_state(const EngineParams& params, const DensityMatrix& state);

// Qdot_h = omega_h * lambda * s
double hot_heat_flux_from_state(const EngineParams& params, const DensityMatrix& state);

// eta = 1 - omega_c/omega_h
double efficiency(const EngineParams& params);

// Steady-state output power in closed form (occupation-number form); agrees
// with power_from_state at the steady state and with
// (omega_h - omega_c) * flux(general).
double power_closed_form(const EngineParams& params);

Observables observables_from_state(const EngineParams& params, const DensityMatrix& state);

}  // namespace qhe
