#pragma once

#include <array>
#include <vector>

#include "qhe/density_matrix.hpp"
#include "qhe/engine_params.hpp"

namespace qhe {

enum class SteadyMethod { reduced, full };

struct SteadyStateSolution {
  DensityMatrix state;
  double residual = 0.0;  // max |d rho / dt| entry at the solution
  SteadyMethod method = SteadyMethod::reduced;
  double condition = 0.0;  // 1-norm condition estimate of the solved system
};

// --- path 1: hand-coded rotating-frame equations of motion ---------------

// Time derivatives of the tracked elements, written directly from the
// equations of motion for the populations and the (1,0), (2,0), (1,2)
// coherences of a Hermitian state.
DensityMatrix equations_of_motion_rhs(const EngineParams& params, const DensityMatrix& rho);

// Steady-state linear system over the 9 real unknowns
// (rho_11, rho_22, rho_00, Re/Im rho_12, Re/Im rho_10, Re/Im rho_20),
// with rho_gg eliminated through the unit trace.
struct ReducedSystem {
  std::array<double, 81> matrix{};
  std::array<double, 9> rhs{};
};

ReducedSystem reduced_system(const EngineParams& params);

SteadyStateSolution solve_steady_reduced(const EngineParams& params);

// --- path 2: superoperator assembled from operator algebra ----------------

// The generator as a real 16x16 matrix over the Hermitian coordinates
// (rho_00..rho_33, then Re/Im of each upper off-diagonal).  Built by
// applying the commutator and dissipator superoperators to basis matrices;
// completely independent of the hand-coded equations above.
struct Liouvillian {
  std::array<double, 256> matrix{};

  DensityMatrix apply(const DensityMatrix& rho) const;
};

Liouvillian full_liouvillian(const EngineParams& params);

// Coordinate map used by the real embedding.
std::array<double, 16> hermitian_coordinates(const DensityMatrix& rho);
DensityMatrix from_hermitian_coordinates(const std::array<double, 16>& v);

SteadyStateSolution solve_steady_full(const EngineParams& params);

// --- verification integrator ----------------------------------------------

struct EvolveResult {
  std::vector<DensityMatrix> states;  // includes initial and final
  double sample_dt = 0.0;             // spacing between stored states
};

// Fixed-step classical 4th order integration of the master equation with
// trace/positivity monitoring.  Verification tool, not a production path.
EvolveResult evolve(const EngineParams& params, const DensityMatrix& rho0, double horizon,
                    double step);

namespace detail {
// rho -> A rho B^dag - (1/2){B^dag A, rho}; B = A gives the usual dissipator.
Mat4 dissipator(const Mat4& a, const Mat4& b, const Mat4& rho);
// rho -> -i [v, rho]
Mat4 commutator_action(const Mat4& v, const Mat4& rho);
// Full generator action on an arbitrary (not necessarily Hermitian) matrix.
Mat4 generator_action(const EngineParams& params, const Mat4& rho);
Mat4 drive_operator(const EngineParams& params);
}  // namespace detail

}  // namespace qhe
