#pragma once

#include <vector>

#include "qhe/closed_forms.hpp"
#include "qhe/engine_params.hpp"
#include "qhe/optimize.hpp"

namespace qhe {

// Diagonal derivative data of a flux I(x, y):
//   l_value = -d1 I(x,x), m_value = d11 I(x,x)/2, dl_dx = d l_value / dx
// taken along the diagonal.  The whole downstream machinery depends only on
// the ratios, so the sign is canonicalized to l_value > 0 (every flux here
// grows with x past the diagonal, which makes the literal l negative).
struct FluxDerivatives {
  double l_value = 0.0;
  double m_value = 0.0;
  double dl_dx = 0.0;
  double x_star = 0.0;
};

FluxDerivatives flux_derivatives(FluxKind kind, double x, const EngineParams& params);

struct AlphaResult {
  double value = 0.0;
  // true when the root sits at the lower edge of the scan window (the
  // high-temperature flux has its root in the x -> 0 limit)
  bool at_boundary = false;
};

// Root of x = -2 l / dl, located by bisection of h(x) = x*dl + 2*l over a
// sign-scan of x in [1e-3, 50].
AlphaResult solve_alpha(const EngineParams& params, FluxKind kind);

struct SymmetryDefect {
  double max_defect = 0.0;
  double worst_x = 0.0;
  double worst_y = 0.0;
};

// max |I(x,y) + I(y,x)| over a deterministic low-discrepancy sample of
// (x, y) in [0.1, 5]^2; zero for a left-right symmetric flux.
SymmetryDefect symmetry_defect(FluxKind kind, const EngineParams& params, int sample_count);

// eta_C^2 coefficient (1 + M/dL)/4 of the near-equilibrium expansion,
// evaluated at alpha.  Exact under flux antisymmetry.
double emp_second_order(const EngineParams& params, FluxKind kind);

struct EmpSeries {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double residual = 0.0;  // max |fit - sample| over the grid
  std::vector<double> eta_grid;
};

// Runs the designated optimization over eta_C in {0.02, 0.04, ..., 0.16}
// (t_c varied, t_h fixed) and fits EMP/eta_C by least squares.
EmpSeries extract_emp_series(const EngineParams& params, Scheme scheme, PowerModel model);

}  // namespace qhe
