#include "qhe/closed_forms.hpp"

#include <cmath>
#include <string>

namespace qhe {

namespace {

double flux_general(double x, double y, const EngineParams& params) {
  const double gc = params.gamma_c, gh = params.gamma_h, lam = params.lambda;
  const double u = 1.0 + params.p;
  const double ex = std::exp(x), ey = std::exp(y), exy = std::exp(x + y);
  const double a_term =
      ey * (exy + 2.0 * ex + ey) * (ex * (ey - 1.0) * gc + u * ey * (ex - 1.0) * gh) * u * gc * gh;
  const double b_term = 8.0 * lam * lam * (ex - 1.0) * (ey - 1.0) *
                        ((ey - 1.0) * ((ex + 2.0) * ey + ex) * gc +
                         u * ey * (ex - 1.0) * (ey + 3.0) * gh);
  const double den = a_term + b_term;
  if (!(std::abs(den) > 0.0))
    throw domain_error("flux(general): vanishing denominator at x=" + std::to_string(x) +
                       " y=" + std::to_string(y) + ", " + describe(params));
  return 8.0 * gc * gh * lam * lam * u * ey * (ey - 1.0) * (ex - ey) * (ex - 1.0) / den;
}

double flux_high_t(double x, double y, const EngineParams& params) {
  const double gc = params.gamma_c, gh = params.gamma_h, lam = params.lambda;
  const double u = 1.0 + params.p;
  const double den =
      2.0 * (y * gc + u * x * gh) * (u * gc * gh + 2.0 * lam * lam * x * y);
  if (!(std::abs(den) > 0.0))
    throw domain_error("flux(high_t): vanishing denominator at x=" + std::to_string(x) +
                       " y=" + std::to_string(y));
  return u * x * y * gc * gh * (x - y) * lam * lam / den;
}

double flux_strong_ht(double x, double y, const EngineParams& params) {
  const double gc = params.gamma_c, gh = params.gamma_h;
  const double u = 1.0 + params.p;
  const double den = 4.0 * y * gc + 4.0 * x * gh * u;
  if (!(std::abs(den) > 0.0))
    throw domain_error("flux(strong_coupling_high_t): vanishing denominator at x=" +
                       std::to_string(x) + " y=" + std::to_string(y));
  return (x - y) * u * gh * gc / den;
}

}  // namespace

double flux(FluxKind kind, double x, double y, const EngineParams& params) {
  switch (kind) {
    case FluxKind::general:
      return flux_general(x, y, params);
    case FluxKind::high_t:
      return flux_high_t(x, y, params);
    case FluxKind::strong_coupling_high_t:
      return flux_strong_ht(x, y, params);
    case FluxKind::low_t:
      return std::exp(-y) - std::exp(-x);
  }
  throw domain_error("flux: unknown kind");
}

double power_low_t(double x, double y, double eta_c, double t_h) {
  return t_h * (y - x * (1.0 - eta_c)) * (std::exp(-y) - std::exp(-x));
}

double power_strong_ht(double omega_c, double omega_h, const EngineParams& params) {
  const double eta_c = carnot(params);
  const double u = 1.0 + params.p;
  const double den = 4.0 * (1.0 - eta_c) * params.gamma_c * omega_h +
                     4.0 * u * params.gamma_h * omega_c;
  if (!(std::abs(den) > 0.0))
    throw domain_error("power_strong_ht: vanishing denominator");
  return (omega_h - omega_c) * (omega_c - (1.0 - eta_c) * omega_h) * u * params.gamma_h *
         params.gamma_c / den;
}

double emp_low_t(double eta_c) {
  return eta_c * eta_c / (eta_c - (1.0 - eta_c) * std::log1p(-eta_c));
}

double emp_high_t_symmetric(double eta_c, double p) {
  return 0.5 * eta_c + eta_c * eta_c * (1.0 + p) / (4.0 * (2.0 + p));
}

double emp_fixed_wh(double eta_c, const EngineParams& params) {
  const double gt = (1.0 + params.p) * params.gamma_h;
  if (!(gt > 0.0)) throw domain_error("emp_fixed_wh: requires p > -1");
  const double gc = params.gamma_c, q = 1.0 - eta_c;
  return (gt + gc * q - std::sqrt(q * (gc + gt) * (q * gc + gt))) / gt;
}

TaylorCoefficients taylor_one_parameter(Scheme scheme, const EngineParams& params) {
  const double gc = params.gamma_c;
  const double gt = (1.0 + params.p) * params.gamma_h;
  if (!(gt > 0.0)) throw domain_error("taylor_one_parameter: requires p > -1");
  const double s = gc + gt;
  TaylorCoefficients t;
  switch (scheme) {
    case Scheme::fixed_wh:
      t.c2 = gt / (8.0 * s);
      t.c3 = gt * (2.0 * gc + gt) / (16.0 * s * s);
      return t;
    case Scheme::fixed_wc:
      t.c2 = (gc + 2.0 * gt) / (8.0 * s);
      t.c3 = (gc * gc + 4.0 * gt * gc + 2.0 * gt * gt) / (16.0 * s * s);
      return t;
    case Scheme::sum_constraint:
      t.c2 = (gc + 3.0 * gt) / (16.0 * s);
      t.c3 = (gc * gc + 10.0 * gt * gc + 5.0 * gt * gt) / (64.0 * s * s);
      return t;
    default:
      throw domain_error("taylor_one_parameter: no analytic expansion for this scheme");
  }
}

double optimal_p(const EngineParams& params) {
  const auto [n_c, n_h] = occupations(params);
  const double s_hot = 1.0 + 3.0 * n_h + 2.0 * n_c + 4.0 * n_c * n_h;
  const double s_cold = 1.0 + 3.0 * n_c + 2.0 * n_h + 4.0 * n_c * n_h;
  // argmax over u = 1+p of u / (C0 + C1 u + C2 u^2) is sqrt(C0/C2)
  return 2.0 * std::sqrt(2.0 * s_cold / s_hot) * params.lambda /
             (params.gamma_h * (1.0 + n_h)) -
         1.0;
}

double optimal_p_high_t(const EngineParams& params) {
  const auto [n_c, n_h] = occupations(params);
  (void)n_c;
  return 2.0 * std::sqrt(2.0) * params.lambda / (params.gamma_h * n_h) - 1.0;
}

double optimal_p_low_t(const EngineParams& params) {
  return 2.0 * std::sqrt(2.0) * params.lambda / params.gamma_h - 1.0;
}

ClampedP clamp_optimal_p(double p_star) {
  if (p_star >= 1.0) return {1.0, PBoundaryAdvice::operate_near_plus_one};
  if (p_star <= -1.0) return {-1.0, PBoundaryAdvice::operate_near_minus_one};
  return {p_star, PBoundaryAdvice::interior};
}

double emp_near_equilibrium_coefficient(const EngineParams& params, double alpha) {
  if (!(alpha > 0.0))
    throw domain_error("emp_near_equilibrium_coefficient: alpha must be positive");
  const double gc = params.gamma_c, gh = params.gamma_h, lam = params.lambda;
  const double u = 1.0 + params.p;
  const double ea = std::exp(alpha), e2a = std::exp(2.0 * alpha);
  const double em1 = ea - 1.0;
  const double num =
      e2a * (em1 * em1 * gc + u * (ea - 5.0) * (ea + 1.0) * gh) * u * gc * gh +
      8.0 * lam * lam * em1 * em1 *
          ((ea * (ea + 2.0) + 5.0) * gc + u * (ea - 3.0) * em1 * gh);
  const double den = (gc + u * gh) * (u * e2a * (ea - 3.0) * (ea + 1.0) * gc * gh +
                                      8.0 * lam * lam * em1 * em1 * (e2a + 3.0));
  if (!(std::abs(den) > 0.0))
    throw domain_error("emp_near_equilibrium_coefficient: vanishing denominator at alpha=" +
                       std::to_string(alpha));
  return num / den / 8.0;
}

}  // namespace qhe
