#include "qhe/universality.hpp"

#include <cmath>
#include <string>

#include "qhe/linalg.hpp"

namespace qhe {

namespace {

double raw_l(FluxKind kind, double x, const EngineParams& params, double h_base = 1e-4) {
  const double h = std::min(h_base * std::max(1.0, x), 0.5 * x);
  auto d1 = [&](double hh) {
    return (flux(kind, x + hh, x, params) - flux(kind, x - hh, x, params)) / (2.0 * hh);
  };
  const double fine = d1(0.5 * h), coarse = d1(h);
  return -(4.0 * fine - coarse) / 3.0;  // one Richardson level
}

double raw_m(FluxKind kind, double x, const EngineParams& params) {
  const double h = std::min(1e-3 * std::max(1.0, x), 0.5 * x);
  auto d11 = [&](double hh) {
    return (flux(kind, x + hh, x, params) - 2.0 * flux(kind, x, x, params) +
            flux(kind, x - hh, x, params)) /
           (hh * hh);
  };
  const double fine = d11(0.5 * h), coarse = d11(h);
  return 0.5 * (4.0 * fine - coarse) / 3.0;
}

// Root finding needs less rounding noise than the default steps give, so the
// inner first derivative uses a wider stencil there (l_base).
double raw_dl(FluxKind kind, double x, const EngineParams& params, double k_base = 1e-3,
              double l_base = 1e-4) {
  const double k = std::min(k_base * std::max(1.0, x), 0.5 * x);
  auto d = [&](double kk) {
    return (raw_l(kind, x + kk, params, l_base) - raw_l(kind, x - kk, params, l_base)) /
           (2.0 * kk);
  };
  const double fine = d(0.5 * k), coarse = d(k);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

FluxDerivatives flux_derivatives(FluxKind kind, double x, const EngineParams& params) {
  if (!(x > 0.0)) throw domain_error("flux_derivatives: x must be positive");
  FluxDerivatives fd;
  fd.x_star = x;
  fd.l_value = raw_l(kind, x, params);
  fd.m_value = raw_m(kind, x, params);
  fd.dl_dx = raw_dl(kind, x, params);
  if (!std::isfinite(fd.l_value) || !std::isfinite(fd.m_value) || !std::isfinite(fd.dl_dx))
    throw domain_error("flux_derivatives: non-finite flux derivative at x=" + std::to_string(x));
  if (fd.l_value < 0.0) {  // canonical engine orientation
    fd.l_value = -fd.l_value;
    fd.m_value = -fd.m_value;
    fd.dl_dx = -fd.dl_dx;
  }
  return fd;
}

namespace {

double alpha_h(const EngineParams& params, FluxKind kind, double x) {
  const double l = raw_l(kind, x, params, 1e-3);
  const double dl = raw_dl(kind, x, params, 2e-3, 1e-3);
  return x * dl + 2.0 * l;
}

}  // namespace

AlphaResult solve_alpha(const EngineParams& params, FluxKind kind) {
  constexpr double kLo = 1e-3, kHi = 50.0;
  constexpr int kN = 256;
  std::array<double, kN> xs{}, hs{};
  double scale = 0.0;
  for (int i = 0; i < kN; ++i) {
    xs[i] = kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kN - 1));
    hs[i] = alpha_h(params, kind, xs[i]);
    scale = std::max(scale, std::abs(raw_l(kind, xs[i], params)));
  }
  if (!(scale > 1e-200))
    throw no_root_error("solve_alpha: flux is degenerate (identically ~0) on [1e-3, 50]");

  for (int i = 0; i + 1 < kN; ++i) {
    if (hs[i] == 0.0) return {xs[i], false};
    if (hs[i] * hs[i + 1] < 0.0) {
      double a = xs[i], b = xs[i + 1], fa = hs[i];
      for (int it = 0; it < 200 && (b - a) > 1e-10 * std::max(1.0, a); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = alpha_h(params, kind, m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      return {0.5 * (a + b), false};
    }
  }

  // No interior sign change.  When h vanishes toward the left edge the root
  // sits at x -> 0+ (the high-temperature flux); report a boundary root far
  // enough from zero for stable finite differences.
  const double h0 = std::abs(hs[0]), h1 = std::abs(hs[8]), h2 = std::abs(hs[16]);
  const bool shrinking = h0 < h1 && h1 < h2;
  const double slope = std::log(h2 / std::max(h0, 1e-300)) / std::log(xs[16] / xs[0]);
  if (shrinking && slope > 0.5) return {0.01, true};

  throw no_root_error("solve_alpha: no sign change of x*dl+2l on the scanned interval [" +
                      std::to_string(kLo) + ", " + std::to_string(kHi) + "]");
}

SymmetryDefect symmetry_defect(FluxKind kind, const EngineParams& params, int sample_count) {
  if (sample_count < 1) throw domain_error("symmetry_defect: sample_count must be >= 1");
  // golden-ratio Kronecker sequence on [0.1, 5]^2
  constexpr double g1 = 0.7548776662466927;  // plastic-number offsets
  constexpr double g2 = 0.5698402909980532;
  SymmetryDefect out;
  for (int i = 0; i < sample_count; ++i) {
    const double u = std::fmod(0.5 + (i + 1) * g1, 1.0);
    const double v = std::fmod(0.5 + (i + 1) * g2, 1.0);
    const double x = 0.1 + 4.9 * u;
    const double y = 0.1 + 4.9 * v;
    const double d = std::abs(flux(kind, x, y, params) + flux(kind, y, x, params));
    if (d > out.max_defect) {
      out.max_defect = d;
      out.worst_x = x;
      out.worst_y = y;
    }
  }
  return out;
}

double emp_second_order(const EngineParams& params, FluxKind kind) {
  const AlphaResult alpha = solve_alpha(params, kind);
  const FluxDerivatives fd = flux_derivatives(kind, alpha.value, params);
  if (fd.dl_dx == 0.0)
    throw domain_error("emp_second_order: dl_dx vanishes at alpha=" +
                       std::to_string(alpha.value));
  return 0.25 * (1.0 + fd.m_value / fd.dl_dx);
}

EmpSeries extract_emp_series(const EngineParams& params, Scheme scheme, PowerModel model) {
  EmpSeries series;
  std::vector<double> samples;
  for (int i = 1; i <= 8; ++i) {
    const double eta = 0.02 * i;
    EngineParams q = params;
    q.t_c = (1.0 - eta) * params.t_h;
    series.eta_grid.push_back(eta);
    samples.push_back(emp_numeric(q, scheme, model) / eta);
  }
  // cubic fit keeps the truncation residual below the fit-quality bound
  const int rows = static_cast<int>(samples.size()), cols = 4;
  std::vector<double> design(rows * cols);
  for (int r = 0; r < rows; ++r) {
    const double eta = series.eta_grid[r];
    design[r * cols + 0] = 1.0;
    design[r * cols + 1] = eta;
    design[r * cols + 2] = eta * eta;
    design[r * cols + 3] = eta * eta * eta;
  }
  const auto coeff = least_squares(design, samples, rows, cols);
  series.c1 = coeff[0];
  series.c2 = coeff[1];
  series.c3 = coeff[2];
  for (int r = 0; r < rows; ++r) {
    const double eta = series.eta_grid[r];
    const double fit = coeff[0] + eta * (coeff[1] + eta * (coeff[2] + eta * coeff[3]));
    series.residual = std::max(series.residual, std::abs(fit - samples[r]));
  }
  return series;
}

}  // namespace qhe
