#include "qhe/engine_params.hpp"

#include <cmath>
#include <sstream>

namespace qhe {

double planck_occupation(double omega, double temp) {
  if (!(omega > 0.0)) throw domain_error("planck_occupation: omega must be positive");
  if (!(temp > 0.0)) throw domain_error("planck_occupation: temp must be positive");
  const double z = omega / temp;
  // 1/(e^z - 1) = e^-z / (1 - e^-z); no overflow for large z, exact for small z.
  const double em = std::exp(-z);
  return em / (-std::expm1(-z));
}

double carnot(const EngineParams& params) {
  if (!(params.t_c > 0.0) || !(params.t_h > params.t_c))
    throw domain_error("carnot: requires 0 < t_c < t_h, got " + describe(params));
  return 1.0 - params.t_c / params.t_h;
}

BathOccupations occupations(const EngineParams& params) {
  return {planck_occupation(params.omega_c, params.t_c),
          planck_occupation(params.omega_h, params.t_h)};
}

DimensionlessPoint scaled_point(const EngineParams& params) {
  return {params.omega_c / params.t_c, params.omega_h / params.t_h};
}

ValidationReport validate(const EngineParams& params, ValidationMode mode) {
  ValidationReport report;
  auto flag = [&report](const std::string& msg) { report.violations.push_back(msg); };

  if (!(params.gamma_c > 0.0)) flag("gamma_c: rate must be positive");
  if (!(params.gamma_h > 0.0)) flag("gamma_h: rate must be positive");
  if (!(params.lambda >= 0.0)) flag("lambda must be non-negative");
  if (!(params.omega_c > 0.0)) flag("omega_c must be positive");
  if (!(params.omega_h > 0.0)) flag("omega_h must be positive");
  if (!(params.t_c > 0.0)) flag("t_c: temperature must be positive");
  if (!(params.t_h > 0.0)) flag("t_h: temperature must be positive");
  if (params.t_c > 0.0 && params.t_h > 0.0 && !(params.t_c < params.t_h))
    flag("temperatures must satisfy t_c < t_h");
  if (!(params.p >= -1.0 && params.p <= 1.0)) flag("p out of [-1,1]");
  if (mode == ValidationMode::engine && params.omega_c > 0.0 && params.omega_h > 0.0 &&
      !(params.omega_h > params.omega_c))
    flag("engine mode requires omega_h > omega_c");
  return report;
}

std::string describe(const EngineParams& p) {
  std::ostringstream os;
  os.precision(12);
  os << "omega_c=" << p.omega_c << " omega_h=" << p.omega_h << " gamma_c=" << p.gamma_c
     << " gamma_h=" << p.gamma_h << " lambda=" << p.lambda << " p=" << p.p << " t_c=" << p.t_c
     << " t_h=" << p.t_h;
  return os.str();
}

}  // namespace qhe
