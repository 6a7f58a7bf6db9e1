#pragma once

#include <stdexcept>
#include <string>

namespace qhe {

// Invalid physical input (non-positive rate, vanishing denominator, ...).
struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Linear solve failed or is too ill-conditioned to trust.
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// Steady state is not unique (extra null vector of the generator).
struct degenerate_steady_state : solver_error {
  explicit degenerate_steady_state(const std::string& what) : solver_error(what) {}
};

// Time integrator detected an invariant violation; refine the step.
struct step_size_error : std::runtime_error {
  explicit step_size_error(const std::string& what) : std::runtime_error(what) {}
};

// Root scan found no sign change.
struct no_root_error : std::runtime_error {
  explicit no_root_error(const std::string& what) : std::runtime_error(what) {}
};

// A state fails a consistency requirement (non-Hermitian input, ...).
struct inconsistent_state_error : std::runtime_error {
  explicit inconsistent_state_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qhe
