#include "qhe/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhe/observables.hpp"

namespace qhe {

namespace {

constexpr double kGolden = 0.6180339887498949;  // 1/phi
constexpr double kBad = -1e300;

double guarded(const std::function<double(double)>& f, double x, long& evals) {
  ++evals;
  const double v = f(x);
  return std::isfinite(v) ? v : kBad;
}

}  // namespace

OptimizationResult maximize_1d(const std::function<double(double)>& objective, double lo,
                               double hi, double tol) {
  if (!(lo < hi)) throw domain_error("maximize_1d: requires lo < hi");
  OptimizationResult res;
  long evals = 0;

  // grid audit for hidden multi-modality
  {
    std::array<double, 64> g{};
    for (int i = 0; i < 64; ++i)
      g[i] = guarded(objective, lo + (hi - lo) * (i + 0.5) / 64.0, evals);
    int peaks = 0;
    for (int i = 1; i < 63; ++i)
      if (g[i] > g[i - 1] && g[i] > g[i + 1]) ++peaks;
    if (peaks > 1) {
      res.multimodal_warning = true;
      res.message = "grid audit found " + std::to_string(peaks) + " local maxima";
    }
  }

  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = guarded(objective, x1, evals);
  double f2 = guarded(objective, x2, evals);
  const int iters =
      static_cast<int>(std::ceil(std::log((hi - lo) / std::max(tol, 1e-300)) /
                                 -std::log(kGolden))) +
      2;
  for (int i = 0; i < iters && (b - a) > tol; ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = guarded(objective, x1, evals);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = guarded(objective, x2, evals);
    }
  }
  res.converged = (b - a) <= tol;

  double xm = (f1 >= f2) ? x1 : x2;
  // parabolic refinement; the flat top limits plain golden section to ~1e-8
  double h = std::max({(hi - lo) * 1e-7, tol, 1e-12});
  for (int i = 0; i < 8; ++i) {
    const double xl = std::max(lo, xm - h), xr = std::min(hi, xm + h);
    const double fl = guarded(objective, xl, evals);
    const double fm = guarded(objective, xm, evals);
    const double fr = guarded(objective, xr, evals);
    const double den = fr - 2.0 * fm + fl;
    if (den < 0.0) {
      double cand = xm - (xr - xl) * 0.25 * (fr - fl) / den;
      cand = std::min(std::max(cand, lo), hi);
      if (guarded(objective, cand, evals) >= fm) xm = cand;
    }
    h *= 0.25;
  }

  res.argmax = {xm};
  res.max_value = objective(xm);
  ++evals;
  res.evaluations = evals;
  return res;
}

namespace {

struct Vertex {
  std::array<double, 2> x{};
  double f = 0.0;  // negated objective
};

double eval2(const std::function<double(double, double)>& f, const std::array<double, 2>& x,
             long& evals) {
  ++evals;
  const double v = f(x[0], x[1]);
  return std::isfinite(v) ? -v : -kBad;
}

double simplex_diameter(const std::array<Vertex, 3>& s) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      d = std::max(d, std::hypot(s[i].x[0] - s[j].x[0], s[i].x[1] - s[j].x[1]));
  return d;
}

void nelder_mead(const std::function<double(double, double)>& f, std::array<Vertex, 3>& s,
                 double tol, long budget, long& evals) {
  auto order = [&s]() {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  order();
  while (evals < budget && simplex_diameter(s) > tol) {
    const std::array<double, 2> centroid{0.5 * (s[0].x[0] + s[1].x[0]),
                                         0.5 * (s[0].x[1] + s[1].x[1])};
    auto blend = [&centroid, &s](double t) {
      return std::array<double, 2>{centroid[0] + t * (centroid[0] - s[2].x[0]),
                                   centroid[1] + t * (centroid[1] - s[2].x[1])};
    };
    Vertex refl{blend(1.0), 0.0};
    refl.f = eval2(f, refl.x, evals);
    if (refl.f < s[0].f) {
      Vertex exp_{blend(2.0), 0.0};
      exp_.f = eval2(f, exp_.x, evals);
      s[2] = (exp_.f < refl.f) ? exp_ : refl;
    } else if (refl.f < s[1].f) {
      s[2] = refl;
    } else {
      const bool outside = refl.f < s[2].f;
      Vertex contr{blend(outside ? 0.5 : -0.5), 0.0};
      contr.f = eval2(f, contr.x, evals);
      if (contr.f < std::min(refl.f, s[2].f)) {
        s[2] = contr;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x[0] = 0.5 * (s[i].x[0] + s[0].x[0]);
          s[i].x[1] = 0.5 * (s[i].x[1] + s[0].x[1]);
          s[i].f = eval2(f, s[i].x, evals);
        }
      }
    }
    order();
  }
}

void newton_polish(const std::function<double(double, double)>& f, std::array<double, 2>& x,
                   double span, long& evals) {
  for (int it = 0; it < 12; ++it) {
    const double h0 = 3e-6 * std::max(1.0, std::abs(x[0]));
    const double h1 = 3e-6 * std::max(1.0, std::abs(x[1]));
    auto F = [&f, &evals](double a, double b) {
      ++evals;
      const double v = f(a, b);
      return std::isfinite(v) ? -v : -kBad;
    };
    const double f0 = F(x[0], x[1]);
    const double fpx = F(x[0] + h0, x[1]), fmx = F(x[0] - h0, x[1]);
    const double fpy = F(x[0], x[1] + h1), fmy = F(x[0], x[1] - h1);
    const double gx = (fpx - fmx) / (2.0 * h0), gy = (fpy - fmy) / (2.0 * h1);
    const double hxx = (fpx - 2.0 * f0 + fmx) / (h0 * h0);
    const double hyy = (fpy - 2.0 * f0 + fmy) / (h1 * h1);
    const double hxy = (F(x[0] + h0, x[1] + h1) - F(x[0] + h0, x[1] - h1) -
                        F(x[0] - h0, x[1] + h1) + F(x[0] - h0, x[1] - h1)) /
                       (4.0 * h0 * h1);
    const double det = hxx * hyy - hxy * hxy;
    if (!(det > 0.0) || !(hxx > 0.0)) return;  // not a clean minimum of -f
    double sx = -(hyy * gx - hxy * gy) / det;
    double sy = -(hxx * gy - hxy * gx) / det;
    const double norm = std::hypot(sx, sy);
    const double cap = 0.25 * std::max(span, 1e-6);
    if (norm > cap) {
      sx *= cap / norm;
      sy *= cap / norm;
    }
    const double fn = F(x[0] + sx, x[1] + sy);
    if (fn > f0) return;  // step did not improve; stop polishing
    x[0] += sx;
    x[1] += sy;
    if (norm < 1e-13 * std::max(1.0, std::hypot(x[0], x[1]))) return;
  }
}

}  // namespace

OptimizationResult maximize_2d(const std::function<double(double, double)>& objective,
                               std::array<double, 2> init, double scale, double tol,
                               long budget) {
  OptimizationResult res;
  res.scheme = Scheme::two_param;
  long evals = 0;

  std::array<Vertex, 3> s;
  s[0].x = init;
  s[1].x = {init[0] + scale, init[1]};
  s[2].x = {init[0], init[1] + scale};
  for (auto& v : s) v.f = eval2(objective, v.x, evals);
  nelder_mead(objective, s, tol, budget, evals);

  std::array<double, 2> best = s[0].x;
  newton_polish(objective, best, scale, evals);

  // confirm stationarity by restarting once from the optimum
  std::array<Vertex, 3> s2;
  const double rescale = std::max(16.0 * tol, 1e-7 * std::max(1.0, std::hypot(best[0], best[1])));
  s2[0].x = best;
  s2[1].x = {best[0] + rescale, best[1]};
  s2[2].x = {best[0], best[1] + rescale};
  for (auto& v : s2) v.f = eval2(objective, v.x, evals);
  nelder_mead(objective, s2, tol, budget, evals);
  std::array<double, 2> confirm = s2[0].x;
  newton_polish(objective, confirm, rescale, evals);
  if (-objective(confirm[0], confirm[1]) < -objective(best[0], best[1])) best = confirm;
  evals += 2;

  res.converged = evals < budget;
  if (!res.converged) res.message = "evaluation budget exhausted; best-so-far returned";
  res.argmax = {best[0], best[1]};
  res.max_value = objective(best[0], best[1]);
  ++evals;
  res.evaluations = evals;
  return res;
}

OptimizationResult maximize_constrained(
    const std::function<double(double, double)>& objective, Constraint constraint,
    const EngineParams& params, double tol) {
  if (!(constraint.k > 0.0)) throw domain_error("maximize_constrained: requires k > 0");
  const double eta = carnot(params);
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> reduced;
  if (constraint.kind == Constraint::Kind::sum) {
    lo = (1.0 - eta) * constraint.k / (2.0 - eta);
    hi = 0.5 * constraint.k;
    reduced = [objective, constraint](double wc) { return objective(wc, constraint.k - wc); };
  } else {
    lo = std::sqrt((1.0 - eta) * constraint.k);
    hi = std::sqrt(constraint.k);
    reduced = [objective, constraint](double wc) { return objective(wc, constraint.k / wc); };
  }
  if (!(lo < hi))
    throw domain_error("maximize_constrained: infeasible window for k=" +
                       std::to_string(constraint.k));
  OptimizationResult res = maximize_1d(reduced, lo, hi, tol);
  const double wc = res.argmax[0];
  const double wh =
      constraint.kind == Constraint::Kind::sum ? constraint.k - wc : constraint.k / wc;
  res.argmax = {wc, wh};
  res.scheme = constraint.kind == Constraint::Kind::sum ? Scheme::sum_constraint
                                                        : Scheme::product_constraint;
  return res;
}

namespace {

// deterministic coarse seed for the two-parameter searches
std::array<double, 2> grid_seed(const std::function<double(double, double)>& objective,
                                double x_lo, double x_hi, double y_lo, double y_hi, int n) {
  std::array<double, 2> best{0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)};
  double fbest = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = x_lo + (x_hi - x_lo) * (i + 0.5) / n;
      const double y = y_lo + (y_hi - y_lo) * (j + 0.5) / n;
      const double v = objective(x, y);
      if (std::isfinite(v) && v > fbest) {
        fbest = v;
        best = {x, y};
      }
    }
  return best;
}

}  // namespace

SchemeResult optimize_power(const EngineParams& params, Scheme scheme, PowerModel model,
                            double tol) {
  const double eta = carnot(params);
  auto pick = [tol](double fallback) { return tol > 0.0 ? tol : fallback; };
  SchemeResult out;

  if (model == PowerModel::low_t) {
    if (scheme != Scheme::two_param)
      throw domain_error("optimize_power: the low_t model supports the two_param scheme only");
    auto obj = [&params, eta](double x, double y) {
      if (!(x > 0.0) || !(y > 0.0)) return kBad;
      return power_low_t(x, y, eta, params.t_h);
    };
    const auto seed = grid_seed(obj, 0.2, 8.0, 0.1, 6.0, 48);
    out.opt = maximize_2d(obj, seed, 0.25, pick(1e-10));
    out.emp = 1.0 - (1.0 - eta) * out.opt.argmax[0] / out.opt.argmax[1];
    return out;
  }

  if (model == PowerModel::strong_ht && scheme == Scheme::two_param)
    throw domain_error(
        "optimize_power: strong_ht power is scale-free in the frequencies; the two-parameter "
        "optimum does not exist");

  auto power = [&params, model](double wc, double wh) {
    if (!(wc > 0.0) || !(wh > wc)) return kBad;
    if (model == PowerModel::strong_ht) return power_strong_ht(wc, wh, params);
    EngineParams q = params;
    q.omega_c = wc;
    q.omega_h = wh;
    return power_closed_form(q);
  };

  switch (scheme) {
    case Scheme::two_param: {  // full model
      const double eps = 1e-6 * params.t_c, cap = 50.0 * params.t_h;
      auto obj = [&power, eps, cap](double wc, double wh) {
        if (!(wc > eps) || !(wh < cap)) return kBad;
        return power(wc, wh);
      };
      auto seed = grid_seed(
          [&obj, &params](double x, double y) { return obj(x * params.t_c, y * params.t_h); },
          0.05, 10.0, 0.05, 10.0, 48);
      out.opt = maximize_2d(obj, {seed[0] * params.t_c, seed[1] * params.t_h},
                            0.05 * params.t_h, pick(1e-9));
      out.emp = 1.0 - out.opt.argmax[0] / out.opt.argmax[1];
      return out;
    }
    case Scheme::fixed_wh: {
      const double wh = params.omega_h;
      out.opt = maximize_1d([&power, wh](double wc) { return power(wc, wh); },
                            (1.0 - eta) * wh, wh, pick(1e-12 * wh));
      out.opt.scheme = Scheme::fixed_wh;
      out.opt.argmax = {out.opt.argmax[0], wh};
      out.emp = 1.0 - out.opt.argmax[0] / wh;
      return out;
    }
    case Scheme::fixed_wc: {
      const double wc = params.omega_c;
      out.opt = maximize_1d([&power, wc](double wh) { return power(wc, wh); }, wc,
                            wc / (1.0 - eta), pick(1e-12 * wc));
      out.opt.scheme = Scheme::fixed_wc;
      out.opt.argmax = {wc, out.opt.argmax[0]};
      out.emp = 1.0 - wc / out.opt.argmax[1];
      return out;
    }
    case Scheme::sum_constraint: {
      out.opt = maximize_constrained(
          power, {Constraint::Kind::sum, params.omega_c + params.omega_h}, params,
          pick(1e-12 * (params.omega_c + params.omega_h)));
      out.emp = 1.0 - out.opt.argmax[0] / out.opt.argmax[1];
      return out;
    }
    case Scheme::product_constraint: {
      out.opt = maximize_constrained(
          power, {Constraint::Kind::product, params.omega_c * params.omega_h}, params,
          pick(1e-12 * params.omega_h));
      out.emp = 1.0 - out.opt.argmax[0] / out.opt.argmax[1];
      return out;
    }
    case Scheme::over_p:
      throw domain_error("optimize_power: over_p does not define an efficiency optimum");
  }
  throw domain_error("optimize_power: unknown scheme");
}

double emp_numeric(const EngineParams& params, Scheme scheme, PowerModel model) {
  return optimize_power(params, scheme, model).emp;
}

OptimizationResult maximize_power_over_p(const EngineParams& params, double tol) {
  auto obj = [&params](double p) {
    EngineParams q = params;
    q.p = p;
    return power_closed_form(q);
  };
  OptimizationResult res = maximize_1d(obj, -1.0, 1.0, tol);
  res.scheme = Scheme::over_p;
  return res;
}

}  // namespace qhe
