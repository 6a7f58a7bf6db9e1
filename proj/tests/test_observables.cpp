#include <cmath>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "qhe/closed_forms.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/observables.hpp"

using namespace qhe;
using qhe::testing::Rng;

TEST_CASE("coherence current basics") {
  // thermal state carries none
  const EngineParams p0 = qhe::testing::fig2_params(0.0, 0.0);
  CHECK(coherence_current(solve_steady_reduced(p0).state) == doctest::Approx(0.0).epsilon(1e-14));

  // rho_10 = rho_20 = i c  =>  current 4c
  DensityMatrix s;
  const double c = 0.37;
  s(lvl_g, lvl_g) = 0.4;
  s(lvl_0, lvl_0) = 0.3;
  s(lvl_1, lvl_1) = 0.2;
  s(lvl_2, lvl_2) = 0.1;
  s(lvl_1, lvl_0) = cplx(0.0, c);
  s(lvl_0, lvl_1) = cplx(0.0, -c);
  s(lvl_2, lvl_0) = cplx(0.0, c);
  s(lvl_0, lvl_2) = cplx(0.0, -c);
  CHECK(coherence_current(s) == doctest::Approx(4.0 * c).epsilon(1e-15));

  // positive current in the engine regime, matching 2 Im rho10 + 2 Im rho20
  const EngineParams p = qhe::testing::fig2_params(0.2, 0.5);
  const auto sol = solve_steady_full(p);
  const double cur = coherence_current(sol.state);
  CHECK(cur > 0.0);
  CHECK(cur == doctest::Approx(2.0 * sol.state(lvl_1, lvl_0).imag() +
                               2.0 * sol.state(lvl_2, lvl_0).imag())
                   .epsilon(1e-12));

  // a Hermiticity defect with a real component leaves an imaginary residue
  DensityMatrix broken = sol.state;
  broken(lvl_0, lvl_1) = broken(lvl_1, lvl_0) + cplx(0.1, 0.0);
  CHECK_THROWS_AS(coherence_current(broken), inconsistent_state_error);
}

TEST_CASE("power and heat flux from a state") {
  EngineParams p = qhe::testing::fig2_params(0.1, 0.0);
  const auto sol = solve_steady_full(p);
  CHECK(power_from_state(p, sol.state) ==
        doctest::Approx(power_closed_form(p)).epsilon(1e-10));

  // exact algebraic ratio P / Qdot_h = 1 - w_c/w_h
  const double ratio = power_from_state(p, sol.state) / hot_heat_flux_from_state(p, sol.state);
  CHECK(ratio == doctest::Approx(1.0 - p.omega_c / p.omega_h).epsilon(1e-15));
  CHECK(hot_heat_flux_from_state(p, sol.state) * power_from_state(p, sol.state) > 0.0);

  // zero gap means zero power
  EngineParams q = p;
  q.omega_c = q.omega_h = 9.0;
  const auto sol_q = solve_steady_full(q);
  CHECK(power_from_state(q, sol_q.state) == 0.0);

  // zero power on the x = y boundary
  EngineParams b = p;
  b.omega_c = b.omega_h * b.t_c / b.t_h;
  const auto sol_b = solve_steady_full(b);
  CHECK(std::abs(power_from_state(b, sol_b.state)) <= 1e-10);
}

TEST_CASE("closed-form power zeros") {
  EngineParams p = qhe::testing::fig2_params(0.2, -1.0);
  CHECK(power_closed_form(p) == 0.0);
  p = qhe::testing::fig2_params(0.2, 0.3);
  p.omega_c = p.omega_h * p.t_c / p.t_h;  // n_c = n_h
  CHECK(std::abs(power_closed_form(p)) <= 1e-14);
}

TEST_CASE("triple-path power equality") {
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    EngineParams p = qhe::testing::random_valid_params(rng);
    p.p = std::min(p.p, 0.999);
    const double via_reduced = power_from_state(p, solve_steady_reduced(p).state);
    const double via_full = power_from_state(p, solve_steady_full(p).state);
    const double closed = power_closed_form(p);
    const double scale = std::max({std::abs(closed), 1e-12 / 1e-9});
    CHECK(std::abs(via_reduced - closed) <= 1e-9 * scale);
    CHECK(std::abs(via_full - closed) <= 1e-9 * scale);
    CHECK(std::abs(via_full - via_reduced) <= 1e-9 * scale);
  }
}

TEST_CASE("closed-form power matches the exponential-form flux") {
  Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    EngineParams p = qhe::testing::random_valid_params(rng);
    const auto [x, y] = scaled_point(p);
    const double via_flux = (p.omega_h - p.omega_c) * flux(FluxKind::general, x, y, p);
    const double closed = power_closed_form(p);
    CHECK(via_flux == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("power sign law") {
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    EngineParams p = qhe::testing::random_valid_params(rng);
    if (p.lambda < 1e-3) p.lambda = 0.1;
    p.p = rng.uniform(-0.99, 0.99);
    const auto [x, y] = scaled_point(p);
    const double power = power_closed_form(p);
    if (x > y + 1e-9) CHECK(power > 0.0);
    if (y > x + 1e-9) CHECK(power < 0.0);
  }
}

TEST_CASE("efficiency") {
  EngineParams p = qhe::testing::fig2_params();
  CHECK(efficiency(p) == doctest::Approx(0.3).epsilon(1e-15));
  p.omega_c = p.omega_h;
  CHECK(efficiency(p) == 0.0);
  p.omega_c = p.omega_h * p.t_c / p.t_h;
  CHECK(efficiency(p) == doctest::Approx(carnot(p)).epsilon(1e-14));
  CHECK(std::abs(power_closed_form(p)) <= 1e-14);
}

TEST_CASE("efficiency bounded by carnot whenever power is non-negative") {
  Rng rng(34);
  for (int i = 0; i < 200; ++i) {
    const EngineParams p = qhe::testing::random_valid_params(rng);
    if (power_closed_form(p) >= 0.0) CHECK(efficiency(p) <= carnot(p) + 1e-14);
  }
}

TEST_CASE("strong coupling makes power nondecreasing in p") {
  Rng rng(35);
  for (int i = 0; i < 20; ++i) {
    EngineParams p = qhe::testing::random_valid_params(rng);
    const auto [n_c, n_h] = occupations(p);
    p.lambda =
        10.0 * std::max(p.gamma_c * (1.0 + n_c), p.gamma_h * (1.0 + n_h));
    if (scaled_point(p).x <= scaled_point(p).y) continue;  // engine points only
    double prev = -1e300;
    for (int k = 0; k <= 40; ++k) {
      p.p = -1.0 + 0.05 * k;
      const double v = power_closed_form(p);
      CHECK(v >= prev - 1e-13 * std::abs(v));
      prev = v;
    }
  }
}
