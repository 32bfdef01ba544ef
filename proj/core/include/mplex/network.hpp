#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mplex/matrix.hpp"

namespace mplex {

using StateFn = std::function<Vec(double)>;   // t -> stacked vector
using SignalFn = std::function<Vec(double)>;  // t -> per-agent vector
using VectorField = std::function<Vec(std::span<const double>, double)>;
using JacobianField = std::function<Matrix(std::span<const double>, double)>;

/// Coupling output for one agent and one layer: (network state, leader
/// state, t) -> R^n. Any empty std::function below means identically zero.
using CouplingFn = std::function<Vec(std::span<const double>, std::span<const double>, double)>;

/// d coupling / d x_j for the requested agent index j (n x n block).
using CouplingJacobianFn =
    std::function<Matrix(std::span<const double>, std::span<const double>, double, int)>;

/// Intrinsic dynamics of a single agent.
struct AgentDynamics {
  int n = 0;
  VectorField f;           // empty = zero dynamics
  JacobianField f_jacobian;
};

/// Disturbance d(t) = w(t) + d0 + d1 * t acting on one agent.
struct Disturbance {
  Vec d0;
  Vec d1;
  SignalFn w;  // piecewise continuous residual, empty = zero

  Vec eval(double t) const;
  bool is_zero() const;
};

Vec disturbance_eval(const Disturbance& d, double t);

/// The six coupling functions of one agent: layers 0..2 of the delay-free
/// and the delayed family, plus their Jacobian providers.
struct CouplingSet {
  std::array<CouplingFn, 3> delay_free{};
  std::array<CouplingFn, 3> delayed{};
  std::array<CouplingJacobianFn, 3> delay_free_jacobian{};
  std::array<CouplingJacobianFn, 3> delayed_jacobian{};

  bool has_delayed() const;
};

/// Multiplex layer outputs of one agent.
struct MultiplexState {
  Vec r1;
  Vec r2;
};

/// Exogenous leader group: stacked positions and the tracked reference
/// velocity (used by scenarios with a feedforward term).
struct LeaderSignal {
  int M = 0;
  StateFn x_l;     // t -> R^{nM}
  SignalFn v_l;    // t -> R^n, may be empty
};

/// Shared network delay 0 <= tau(t) <= tau_max.
struct DelayFunction {
  std::function<double(double)> tau;  // empty = no delay
  double tau_max = 0.0;

  static DelayFunction none();
  static DelayFunction constant(double tau);

  double eval(double t) const;  // validates the bound
};

/// Declared structure of the diffusive-tanh / linear-leader coupling
/// family: delay-free leader couplings -k[m] * I on every agent and
/// delayed neighbour couplings whose Jacobian slopes lie in (0, k_psi],
/// with at most max_neighbors neighbours per agent. Lets the certificate
/// evaluate sound worst-case bounds without sampling.
struct TanhFamilyInfo {
  std::array<double, 3> k{};      // leader gains per layer
  std::array<double, 3> k_tau{};  // delayed neighbour gains per layer
  double k_psi = 0.0;
  int max_neighbors = 0;
};

/// Closed-loop network: agent dynamics, per-agent couplings and
/// disturbances, leaders, shared delay, and the desired solution.
/// Stacked layout everywhere: z = [x (nN); r1 (nN); r2 (nN)].
struct NetworkSystem {
  int N = 0;  // agents
  int n = 0;  // per-agent state dimension

  std::vector<AgentDynamics> agents;
  std::vector<Disturbance> disturbances;
  std::vector<CouplingSet> couplings;
  std::vector<std::vector<int>> neighbors;     // index sets N_i
  std::vector<std::vector<int>> leader_links;  // index sets L_i

  LeaderSignal leader;
  DelayFunction delay;

  StateFn desired;       // t -> R^{nN}, may be empty for raw systems
  SignalFn feedforward;  // added to every xdot_i (tracked reference speed), may be empty
  StateFn history;       // s -> R^{3nN} for s <= t0

  std::optional<TanhFamilyInfo> tanh_family;

  int stacked_dim() const { return 3 * n * N; }
  bool has_delayed_couplings() const;
  void validate() const;
};

/// Time derivative of the stacked state under the multiplex protocol:
///   xdot_i  = f_i + h_{i,0} + h^tau_{i,0} + r1_i + d_i(t) [+ feedforward]
///   r1dot_i = h_{i,1} + h^tau_{i,1} + r2_i
///   r2dot_i = h_{i,2} + h^tau_{i,2}
/// Delayed couplings read z_delayed and the leader at t - tau(t).
Vec closed_loop_rhs(const NetworkSystem& sys, std::span<const double> z,
                    std::span<const double> z_delayed, double t);

struct C1Result {
  bool pass = false;
  double max_residual = 0.0;
  int worst_agent = -1;
  int worst_layer = -1;
  bool worst_delayed = false;
  double worst_time = 0.0;
};

/// Evaluates all 6N coupling functions at the desired solution over the
/// time grid; pass iff the max residual (inf-norm) is <= 1e-12.
C1Result check_c1(const NetworkSystem& sys, std::span<const double> t_samples);

/// Max residual of xdot*_i = f_i(x*_i, t) + feedforward(t) by central
/// differences of the desired solution on the grid.
double desired_solution_residual(const NetworkSystem& sys, std::span<const double> t_samples);

}  // namespace mplex
