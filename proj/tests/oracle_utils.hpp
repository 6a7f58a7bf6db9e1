#pragma once

#include <cmath>
#include <cstdint>

#include "qhe/engine_params.hpp"

namespace qhe::testing {

// splitmix64: deterministic across platforms, good enough for test sampling
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (next_u64() >> 11) * 0x1.0p-53;
  }
};

// ranges used by the randomized cross-checks: rates in [0.05, 2],
// lambda in [0, 1], p in [-1, 1], T_c < T_h in [1, 20], w_c < w_h in [0.5, 20]
inline EngineParams random_valid_params(Rng& rng) {
  EngineParams p;
  p.gamma_c = rng.uniform(0.05, 2.0);
  p.gamma_h = rng.uniform(0.05, 2.0);
  p.lambda = rng.uniform(0.0, 1.0);
  p.p = rng.uniform(-1.0, 1.0);
  const double t1 = rng.uniform(1.0, 20.0), t2 = rng.uniform(1.0, 20.0);
  p.t_c = std::min(t1, t2);
  p.t_h = std::max(t1, t2);
  if (p.t_h - p.t_c < 1e-3) p.t_h += 1e-3;
  const double w1 = rng.uniform(0.5, 20.0), w2 = rng.uniform(0.5, 20.0);
  p.omega_c = std::min(w1, w2);
  p.omega_h = std::max(w1, w2);
  if (p.omega_h - p.omega_c < 1e-3) p.omega_h += 1e-3;
  return p;
}

inline EngineParams fig2_params(double lambda = 0.1, double p = 0.0) {
  EngineParams q;
  q.gamma_c = 0.25;
  q.gamma_h = 0.5;
  q.t_h = 10.0;
  q.t_c = 6.0;
  q.omega_h = 10.0;
  q.omega_c = 7.0;
  q.lambda = lambda;
  q.p = p;
  return q;
}

inline EngineParams fig3_params(double p = 0.0) {
  EngineParams q = fig2_params(0.1, p);
  q.gamma_c = 1.0;
  q.gamma_h = 0.5;
  return q;
}

}  // namespace qhe::testing
