#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "mplex/certificate.hpp"
#include "mplex/network.hpp"
#include "mplex/simulate.hpp"

namespace mplex {

/// Unicycle pose; the controlled output is the hand position, a point at
/// distance l > 0 ahead of the wheel axis.
struct UnicycleState {
  std::array<double, 2> p{0.0, 0.0};  // inertial position [m]
  double theta = 0.0;                 // heading [rad], wrapped to (-pi, pi]
};

double wrap_angle(double theta);

std::array<double, 2> hand_position(const UnicycleState& s, double l);

/// Hand-position velocity under inputs u = [v, Omega] and disturbance d.
std::array<double, 2> hand_dynamics(const UnicycleState& s, std::array<double, 2> u,
                                    std::array<double, 2> d, double l);

/// Closed-form inverse of the hand-position input matrix:
///   v = cos(theta) nu_x + sin(theta) nu_y
///   Omega = (-sin(theta) nu_x + cos(theta) nu_y) / l
std::array<double, 2> feedback_linearize(double theta, double l, std::array<double, 2> nu);

/// Control gains of the formation protocol.
struct GainSet {
  double k0 = 1.4342;
  double k1 = 1.536;
  double k2 = 0.4937;
  double k0_tau = 0.321;
  double k1_tau = 0.436;
  double k2_tau = 0.213;
  double k_psi = 0.1;

  void validate() const;  // all positive
  bool operator==(const GainSet&) const = default;
};

/// Concentric-circle formation: circle k (1-based) holds 4k robots at
/// radius k * radius_step; each robot couples to the robots immediately
/// ahead and behind on its circle plus the closest robot on circle k-1
/// (ties broken by lowest index), so card(N_i) <= 3.
struct FormationSpec {
  int circles = 1;
  double radius_step = 2.0;  // [m]

  std::vector<std::array<double, 2>> offsets;               // o_i: eta_i* = eta_l + o_i
  std::vector<std::array<double, 2>> delta_leader;          // delta*_{li} = -o_i
  std::vector<std::vector<std::array<double, 2>>> delta_nbr;  // delta*_{ji}, aligned with neighbors
  std::vector<int> circle_of;                               // 1-based circle index
  std::vector<std::vector<int>> neighbors;

  static FormationSpec concentric(int circles, double radius_step);

  int robot_count() const { return static_cast<int>(offsets.size()); }
  int first_robot_on_circle(int k) const;
  void validate() const;
};

/// Reference trajectory from the virtual leader: constant speed along a
/// heading chi(t) = amplitude * sin(2 pi t / period). The position is the
/// exact integral of the velocity (truncated Jacobi-Anger expansion), so
/// velocity(t) is the machine-precision derivative of position(t).
class LeaderPath {
 public:
  LeaderPath(double speed, double amplitude, double period, std::array<double, 2> start = {0.0, 0.0});

  std::array<double, 2> position(double t) const;
  std::array<double, 2> velocity(double t) const;

  double speed() const { return speed_; }
  double amplitude() const { return amplitude_; }
  double period() const { return period_; }
  std::array<double, 2> start() const { return start_; }

 private:
  double speed_;
  double amplitude_;
  double period_;
  double omega_;
  std::array<double, 2> start_;
  std::vector<double> bessel_;  // J_m(amplitude), truncated at machine precision
};

/// Ramp-plus-residual disturbance assigned to a single robot:
///   d(t) = d0 + d1 t + amp .* sin(freq t) e^{-decay t}.
struct RampDisturbance {
  int agent = 0;
  std::array<double, 2> d0{0.0, 0.0};
  std::array<double, 2> d1{0.0, 0.0};
  std::array<double, 2> residual_amp{0.0, 0.0};
  double residual_freq = 1.0;
  double residual_decay = 0.3;

  bool operator==(const RampDisturbance&) const = default;
};

/// Seeded uniform perturbation of the initial hand positions around the
/// desired formation; multiplex states start at zero and the pre-horizon
/// history is constant.
struct InitialState {
  double perturbation = 0.1;  // [m]
  std::uint64_t seed = 0;
};

/// Hand-position closed loop of the formation (n = 2, f == 0, leader
/// velocity feedforward): linear leader couplings on every robot and
/// delayed tanh neighbour couplings, with the desired solution
/// eta_i*(t) = eta_l(t) + o_i. Declares the tanh family for the analytic
/// certificate route.
NetworkSystem build_formation(const FormationSpec& spec, const GainSet& gains, const LeaderPath& leader,
                              const DelayFunction& delay, const std::vector<RampDisturbance>& disturbances,
                              const InitialState& init);

enum class ExperimentKind { Track, RampReject, Sweep };

struct ExperimentConfig {
  int circles = 10;
  double radius_step = 2.0;
  GainSet gains{};
  double leader_speed = 0.3;
  double leader_amplitude = 0.7;
  double leader_period = 20.0;
  std::array<double, 2> leader_start{0.0, 0.0};
  double tau = 0.33;
  double tau_max = 0.33;
  double horizon = 60.0;
  double dt = 1e-3;
  int record_every = 100;
  std::uint64_t seed = 0;
  double init_perturbation = 0.1;
  std::optional<RampDisturbance> disturbance;  // RampReject/Sweep default: reference profile on robot 0
  PNorm p = PNorm::Two;
  std::optional<std::pair<double, double>> alpha;  // fixed homogeneous alpha; unset => grid search
  std::optional<SampleRegion> region;              // set => sampled certificate route
};

/// Per-configuration, per-circle maximum hand-position deviation.
struct SweepResult {
  std::vector<int> circle_counts;       // the K of each run
  std::vector<Vec> max_deviation;       // row k: circles 1..circle_counts[k]
};

struct ExperimentResult {
  FormationSpec spec;
  CertificateReport certificate;
  std::vector<TraceRecord> traces;      // empty for Sweep
  std::optional<SweepResult> sweep;
  double init_dev = 0.0;                // terms fed into the deviation bound
  double init_mplx = 0.0;
  double w_sup = 0.0;
};

/// Builds the formation, certifies the gains (warns on stderr when the
/// certificate is infeasible), integrates the closed loop and attaches the
/// deviation bound to each record when feasible. Sweep runs K = 1..circles
/// and reports per-circle maxima instead of traces.
ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& config);

/// The ramp-plus-residual profile used by the ramp-rejection experiment:
/// d(t) = [0.07, 0.06] + [0.02, -0.04] t + [0.05, 0.06] sin(t) e^{-0.3 t}.
RampDisturbance reference_disturbance();

}  // namespace mplex
