#pragma once

#include <string>
#include <vector>

#include "qhe/errors.hpp"

namespace qhe {

// All controls of the four-level laser heat engine, natural units
// (hbar = k_B = 1).  Basis levels: ground g, intermediate 0, degenerate 1,2.
//   omega_c : cold transition frequency (0 <-> g)
//   omega_h : hot transition frequency (1,2 <-> g), equal for both branches
//   gamma_c : cold bath coupling rate
//   gamma_h : hot bath coupling rate, shared by the two degenerate branches
//   lambda  : matter-field (drive) coupling
//   p       : noise-induced coherence parameter, cos(theta) in [-1, 1]
//   t_c/t_h : bath temperatures, t_c < t_h
struct EngineParams {
  double omega_c = 7.0;
  double omega_h = 10.0;
  double gamma_c = 0.25;
  double gamma_h = 0.5;
  double lambda = 0.1;
  double p = 0.0;
  double t_c = 6.0;
  double t_h = 10.0;
};

struct BathOccupations {
  double n_c = 0.0;
  double n_h = 0.0;
};

// Scaled energies x = omega_c/t_c, y = omega_h/t_h.  Engine regime
// (positive power) is x > y.
struct DimensionlessPoint {
  double x = 0.0;
  double y = 0.0;
};

enum class ValidationMode { engine, unrestricted };

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Mean photon number 1/(exp(omega/temp) - 1); stable for large omega/temp.
double planck_occupation(double omega, double temp);

// Carnot efficiency 1 - t_c/t_h.
double carnot(const EngineParams& params);

BathOccupations occupations(const EngineParams& params);
DimensionlessPoint scaled_point(const EngineParams& params);

// Non-fatal invariant check; returns every violation instead of aborting so
// sweep drivers can skip bad grid points.
ValidationReport validate(const EngineParams& params,
                          ValidationMode mode = ValidationMode::engine);

// One-line "key=value ..." rendering used by error messages and CSV comments.
std::string describe(const EngineParams& params);

}  // namespace qhe
