#include "qhe/observables.hpp"

#include <cmath>

namespace qhe {

double coherence_current(const DensityMatrix& state) {
  const cplx s = cplx(0.0, 1.0) * ((state(lvl_0, lvl_1) - state(lvl_1, lvl_0)) +
                                   (state(lvl_0, lvl_2) - state(lvl_2, lvl_0)));
  if (std::abs(s.imag()) > 1e-10)
    throw inconsistent_state_error("coherence_current: state is not Hermitian (imag residue " +
                                   std::to_string(s.imag()) + ")");
  return s.real();
}

double power_from_state(const EngineParams& params, const DensityMatrix& state) {
  return (params.omega_h - params.omega_c) * params.lambda * coherence_current(state);
}

double hot_heat_flux_from_state(const EngineParams& params, const DensityMatrix& state) {
  return params.omega_h * params.lambda * coherence_current(state);
}

double efficiency(const EngineParams& params) {
  if (!(params.omega_h > 0.0)) throw domain_error("efficiency: omega_h must be positive");
  return 1.0 - params.omega_c / params.omega_h;
}

double power_closed_form(const EngineParams& params) {
  const auto [n_c, n_h] = occupations(params);
  const double gc = params.gamma_c, gh = params.gamma_h, lam = params.lambda;
  const double u = 1.0 + params.p;
  const double s_hot = 1.0 + 3.0 * n_h + 2.0 * n_c + 4.0 * n_c * n_h;
  const double s_cold = 1.0 + 3.0 * n_c + 2.0 * n_h + 4.0 * n_c * n_h;
  const double a_term =
      u * gc * gh * (n_h + 1.0) * s_hot * (gc * (n_c + 1.0) + u * gh * (n_h + 1.0));
  const double b_term =
      8.0 * lam * lam * (gc * s_cold + u * gh * (4.0 * n_h * n_h + 5.0 * n_h + 1.0));
  const double den = a_term + b_term;
  if (!(den > 0.0))
    throw domain_error("power_closed_form: non-positive denominator at " + describe(params));
  return 8.0 * lam * lam * u * gc * gh * (n_h + 1.0) * (n_h - n_c) *
         (params.omega_h - params.omega_c) / den;
}

Observables observables_from_state(const EngineParams& params, const DensityMatrix& state) {
  Observables o;
  o.coherence_current = coherence_current(state);
  o.power = (params.omega_h - params.omega_c) * params.lambda * o.coherence_current;
  o.hot_heat_flux = params.omega_h * params.lambda * o.coherence_current;
  o.efficiency = efficiency(params);
  return o;
}

}  // namespace qhe
