#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/observables.hpp"

using namespace qhe;
using qhe::testing::Rng;

namespace {

// Steady-state (1,0) coherence in closed form; independent oracle for the
// linear solvers.
cplx steady_rho10_closed(const EngineParams& p) {
  const auto [n_c, n_h] = occupations(p);
  const double u = 1.0 + p.p, gc = p.gamma_c, gh = p.gamma_h, lam = p.lambda;
  const double s_hot = 1.0 + 3.0 * n_h + 2.0 * n_c + 4.0 * n_c * n_h;
  const double s_cold = 1.0 + 3.0 * n_c + 2.0 * n_h + 4.0 * n_c * n_h;
  const double a_term = u * gc * gh * (n_h + 1.0) * s_hot *
                        (gc * (n_c + 1.0) + u * gh * (n_h + 1.0));
  const double b_term =
      8.0 * lam * lam * (gc * s_cold + u * gh * (4.0 * n_h * n_h + 5.0 * n_h + 1.0));
  return cplx(0.0, -2.0) * lam * u * gc * gh * (n_h + 1.0) * (n_c - n_h) / (a_term + b_term);
}

DensityMatrix random_hermitian(Rng& rng) {
  DensityMatrix h;
  for (int i = 0; i < 4; ++i) h(i, i) = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const cplx v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  return h;
}

void check_physical(const DensityMatrix& s) {
  CHECK(s.hermiticity_defect() <= 1e-12);
  CHECK(s.trace_defect() <= 1e-12);
  CHECK(s.min_eigenvalue() >= -1e-10);
}

}  // namespace

TEST_CASE("lambda=0 gives the block-diagonal thermal state") {
  EngineParams p = qhe::testing::fig2_params(0.0, 0.4);
  const auto sol = solve_steady_reduced(p);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(sol.state(i, j)) <= 1e-14);
  // detailed balance against the ground population
  const auto [n_c, n_h] = occupations(p);
  const double rgg = sol.state(lvl_g, lvl_g).real();
  CHECK(sol.state(lvl_0, lvl_0).real() / rgg ==
        doctest::Approx(n_c / (n_c + 1.0)).epsilon(1e-12));
  CHECK(sol.state(lvl_1, lvl_1).real() / rgg ==
        doctest::Approx(n_h / (n_h + 1.0)).epsilon(1e-12));
  CHECK(sol.state(lvl_2, lvl_2).real() / rgg ==
        doctest::Approx(n_h / (n_h + 1.0)).epsilon(1e-12));
}

TEST_CASE("steady coherences match the closed form") {
  for (const double lam : {0.1, 0.2}) {
    for (const double pv : {0.0, 0.5, -0.6}) {
      const EngineParams p = qhe::testing::fig2_params(lam, pv);
      const auto sol = solve_steady_reduced(p);
      const cplx oracle = steady_rho10_closed(p);
      CHECK(std::abs(sol.state(lvl_1, lvl_0) - oracle) <= 1e-10);
      CHECK(std::abs(sol.state(lvl_2, lvl_0) - oracle) <= 1e-10);
      CHECK(std::abs(sol.state(lvl_0, lvl_1) - std::conj(oracle)) <= 1e-10);
    }
  }
}

TEST_CASE("equal occupations kill the coherence") {
  EngineParams p = qhe::testing::fig2_params(0.2, 0.3);
  p.t_c = p.t_h = 8.0;  // solvers do not require t_c < t_h
  p.omega_c = p.omega_h = 9.0;
  const auto sol = solve_steady_reduced(p);
  CHECK(std::abs(sol.state(lvl_1, lvl_0)) <= 1e-14);
  CHECK(std::abs(sol.state(lvl_2, lvl_0)) <= 1e-14);
}

TEST_CASE("p=-1 carries no coherence current") {
  const EngineParams p = qhe::testing::fig2_params(0.25, -1.0);
  const auto sol = solve_steady_reduced(p);
  CHECK(std::abs(coherence_current(sol.state)) <= 1e-14);
}

TEST_CASE("coherence current vanishes linearly in (1+p)") {
  const double s1 =
      coherence_current(solve_steady_reduced(qhe::testing::fig2_params(0.2, -1.0 + 1e-3)).state);
  const double s2 =
      coherence_current(solve_steady_reduced(qhe::testing::fig2_params(0.2, -1.0 + 2e-3)).state);
  CHECK(s1 / 1e-3 == doctest::Approx(s2 / 2e-3).epsilon(1e-2));
}

TEST_CASE("swapping bath occupations flips the coherence sign") {
  const EngineParams p = qhe::testing::fig2_params(0.2, 0.4);
  const auto pt = scaled_point(p);
  EngineParams q = p;  // swap the scaled energies: n_c <-> n_h
  q.omega_c = pt.y * p.t_c;
  q.omega_h = pt.x * p.t_h;
  const double im1 = solve_steady_reduced(p).state(lvl_1, lvl_0).imag();
  const double im2 = solve_steady_reduced(q).state(lvl_1, lvl_0).imag();
  CHECK(im1 * im2 < 0.0);
}

TEST_CASE("reduced and full solvers agree entrywise") {
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    EngineParams p = qhe::testing::random_valid_params(rng);
    p.p = std::min(p.p, 0.999);  // p=1 is a genuinely degenerate point
    const auto red = solve_steady_reduced(p);
    const auto ful = solve_steady_full(p);
    CHECK(red.state.max_abs_diff(ful.state) <= 1e-9);
    CHECK(red.residual <= 1e-10);
    CHECK(ful.residual <= 1e-10);
    check_physical(red.state);
    check_physical(ful.state);
  }
}

TEST_CASE("generator preserves the trace") {
  Rng rng(22);
  const EngineParams p = qhe::testing::fig2_params(0.3, 0.7);
  const Liouvillian l = full_liouvillian(p);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix h = random_hermitian(rng);
    const DensityMatrix d = l.apply(h);
    CHECK(std::abs(d.rho.trace()) <= 1e-12);
  }
}

TEST_CASE("p=0 generator is the cross-term-free sum of dissipators") {
  const EngineParams p = qhe::testing::fig2_params(0.2, 0.0);
  const auto [n_c, n_h] = occupations(p);
  Rng rng(23);
  const Mat4 a_c = Mat4::ketbra(lvl_g, lvl_0);
  const Mat4 a_1 = Mat4::ketbra(lvl_g, lvl_1);
  const Mat4 a_2 = Mat4::ketbra(lvl_g, lvl_2);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix h = random_hermitian(rng);
    Mat4 manual = detail::commutator_action(detail::drive_operator(p), h.rho);
    manual += p.gamma_c * (n_c + 1.0) * detail::dissipator(a_c, a_c, h.rho);
    manual += p.gamma_c * n_c * detail::dissipator(a_c.dagger(), a_c.dagger(), h.rho);
    for (const Mat4* a : {&a_1, &a_2}) {
      manual += p.gamma_h * (n_h + 1.0) * detail::dissipator(*a, *a, h.rho);
      manual += p.gamma_h * n_h * detail::dissipator(a->dagger(), a->dagger(), h.rho);
    }
    const Mat4 built = detail::generator_action(p, h.rho);
    for (int k = 0; k < 16; ++k) CHECK(std::abs(built.m[k] - manual.m[k]) <= 1e-15);
  }
}

TEST_CASE("operator algebra matches the hand-coded equations of motion") {
  Rng rng(24);
  for (int i = 0; i < 25; ++i) {
    EngineParams p = qhe::testing::random_valid_params(rng);
    const DensityMatrix h = random_hermitian(rng);
    const Mat4 alg = detail::generator_action(p, h.rho);
    const DensityMatrix hand = equations_of_motion_rhs(p, h);
    for (int k = 0; k < 16; ++k) CHECK(std::abs(alg.m[k] - hand.rho.m[k]) <= 1e-12);
  }
}

TEST_CASE("reduced system encodes the steady equations") {
  // residual of the reduced solution against the hand-coded time derivatives
  const EngineParams p = qhe::testing::fig2_params(0.2, 0.5);
  const auto sol = solve_steady_reduced(p);
  const DensityMatrix d = equations_of_motion_rhs(p, sol.state);
  for (int k = 0; k < 16; ++k) CHECK(std::abs(d.rho.m[k]) <= 1e-12);
}

TEST_CASE("p=1 is degenerate and reported as such") {
  const EngineParams p = qhe::testing::fig2_params(0.2, 1.0);
  CHECK_THROWS_AS(solve_steady_full(p), degenerate_steady_state);
  CHECK_THROWS_AS(solve_steady_reduced(p), solver_error);
}

TEST_CASE("evolution is attracted to the steady state") {
  const EngineParams p = qhe::testing::fig2_params(0.2, 0.5);
  const auto steady = solve_steady_full(p);
  const auto traj = evolve(p, DensityMatrix::maximally_mixed(), 400.0, 0.01);
  CHECK(traj.states.back().max_abs_diff(steady.state) <= 1e-6);
  for (const auto& s : traj.states) CHECK(s.trace_defect() <= 1e-9);
}

TEST_CASE("steady start stays put") {
  const EngineParams p = qhe::testing::fig2_params(0.2, 0.5);
  const auto steady = solve_steady_full(p);
  const double horizon = 10.0;
  const auto traj = evolve(p, steady.state, horizon, 0.01);
  CHECK(traj.states.back().max_abs_diff(steady.state) <= 1e-10 * horizon);
}

TEST_CASE("evolve rejects bad arguments") {
  const EngineParams p = qhe::testing::fig2_params();
  CHECK_THROWS_AS(evolve(p, DensityMatrix::maximally_mixed(), 1.0, 0.0), domain_error);
  CHECK_THROWS_AS(evolve(p, DensityMatrix::maximally_mixed(), 0.5, 1.0), domain_error);
  DensityMatrix broken;
  broken(0, 0) = 2.0;  // trace 2
  CHECK_THROWS_AS(evolve(p, broken, 1.0, 0.1), inconsistent_state_error);
}
