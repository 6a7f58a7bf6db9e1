#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qhe/closed_forms.hpp"
#include "qhe/engine_params.hpp"

namespace qhe {

struct OptimizationResult {
  std::vector<double> argmax;
  double max_value = 0.0;
  long evaluations = 0;
  bool converged = false;
  Scheme scheme = Scheme::two_param;
  bool multimodal_warning = false;
  std::string message;
};

// Golden-section bracket reduction to width <= tol on (lo, hi), followed by a
// fixed number of parabolic refinements.  Deterministic; a 64-point grid
// audit flags apparent multi-modality in result.multimodal_warning.
OptimizationResult maximize_1d(const std::function<double(double)>& objective, double lo,
                               double hi, double tol = 1e-10);

// Nelder-Mead on the negated objective with a deterministic start simplex,
// then finite-difference Newton polish; restarts once from the optimum to
// confirm stationarity.
OptimizationResult maximize_2d(const std::function<double(double, double)>& objective,
                               std::array<double, 2> init, double scale, double tol = 1e-8,
                               long budget = 20000);

struct Constraint {
  enum class Kind { sum, product } kind = Kind::sum;
  double k = 1.0;
};

// Eliminates omega_h through the constraint and maximizes over omega_c inside
// the positive-power window.
OptimizationResult maximize_constrained(
    const std::function<double(double, double)>& objective, Constraint constraint,
    const EngineParams& params, double tol = 1e-10);

enum class PowerModel { full, strong_ht, low_t };

struct SchemeResult {
  OptimizationResult opt;
  double emp = 0.0;  // efficiency at the located power maximum
};

// Runs the designated optimization scheme on the chosen power model.  For
// two_param the argmax holds the two optimized coordinates (frequencies for
// the full model, scaled energies for low_t); one-parameter and constrained
// schemes report (omega_c, omega_h).  tol > 0 overrides the per-scheme
// default bracket/simplex tolerance.
SchemeResult optimize_power(const EngineParams& params, Scheme scheme, PowerModel model,
                            double tol = 0.0);

// Efficiency at the power maximum of the designated scheme/model.
double emp_numeric(const EngineParams& params, Scheme scheme, PowerModel model);

// Numerical argmax of the steady-state power over p in (-1, 1).
OptimizationResult maximize_power_over_p(const EngineParams& params, double tol = 1e-10);

}  // namespace qhe
