#pragma once

#include <optional>

#include "qhe/engine_params.hpp"

namespace qhe {

// Matter-flux expressions in the scaled energies (x, y).
//   general                : exact flux of the engine
//   high_t                 : e^z ~ 1+z expansion of the general flux
//   strong_coupling_high_t : saturated-drive limit on top of high_t
//   low_t                  : e^{-y} - e^{-x}
enum class FluxKind { general, high_t, strong_coupling_high_t, low_t };

// One-parameter/constrained optimization schemes; shared with the optimizer.
enum class Scheme { fixed_wh, fixed_wc, two_param, sum_constraint, product_constraint, over_p };

struct TaylorCoefficients {
  double c1 = 0.5;
  double c2 = 0.0;
  std::optional<double> c3;
};

double flux(FluxKind kind, double x, double y, const EngineParams& params);

// Low-temperature power T_h [y - x(1-eta_c)] (e^{-y} - e^{-x}); the overall
// rate constant is set to 1 (argmax and efficiency do not depend on it).
double power_low_t(double x, double y, double eta_c, double t_h);

// Strong-coupling, high-temperature power in the control frequencies.
double power_strong_ht(double omega_c, double omega_h, const EngineParams& params);

// Exact low-temperature efficiency at maximum power.
double emp_low_t(double eta_c);

// Second-order high-temperature EMP with symmetric rates:
// eta/2 + eta^2 (1+p)/(4(2+p)).
double emp_high_t_symmetric(double eta_c, double p);

// Closed-form EMP of power_strong_ht optimized over omega_c at fixed omega_h.
double emp_fixed_wh(double eta_c, const EngineParams& params);

// Analytic series coefficients of the one-parameter EMP expansions.
TaylorCoefficients taylor_one_parameter(Scheme scheme, const EngineParams& params);

// Coherence parameter maximizing the steady-state power (may fall outside
// [-1,1]; callers clamp for operational advice).
double optimal_p(const EngineParams& params);
double optimal_p_high_t(const EngineParams& params);  // n_c, n_h >> 1 limit
double optimal_p_low_t(const EngineParams& params);   // n_c, n_h << 1 limit

enum class PBoundaryAdvice { interior, operate_near_plus_one, operate_near_minus_one };

struct ClampedP {
  double value = 0.0;
  PBoundaryAdvice advice = PBoundaryAdvice::interior;
};

ClampedP clamp_optimal_p(double p_star);

// eta_C^2 coefficient of the near-equilibrium EMP evaluated at the
// diagonal point alpha (two-parameter scheme, general flux).
double emp_near_equilibrium_coefficient(const EngineParams& params, double alpha);

}  // namespace qhe
