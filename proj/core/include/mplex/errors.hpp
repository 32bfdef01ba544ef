#pragma once

#include <stdexcept>

namespace mplex {

// Shape mismatch between matrices / vectors / block grids.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iterative solve exceeded its iteration cap.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter or configuration value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulation produced a non-finite state.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rate equation or certificate has no solution.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// History lookup outside the stored window.
struct LookupError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// An analytic route was requested for couplings it does not cover.
struct NotApplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mplex
