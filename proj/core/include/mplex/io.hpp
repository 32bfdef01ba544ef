#pragma once

#include <iosfwd>
#include <string>

#include "mplex/formation.hpp"

namespace mplex {

/// Sampled-route region settings as they appear in the config document.
struct RegionConfig {
  double lo_m = -1.0;
  double hi_m = 1.0;
  int count = 100;
  std::uint64_t seed = 0;
  std::string sampler = "random";  // "random" | "grid"
  Vec t_samples_s = {0.0};

  bool operator==(const RegionConfig&) const = default;
};

struct CertificateConfig {
  PNorm p = PNorm::Two;
  std::string route = "analytic";  // "analytic" | "sampled"
  std::optional<std::array<double, 2>> alpha;  // unset => deterministic grid search
  RegionConfig region;

  bool operator==(const CertificateConfig&) const = default;
};

struct DisturbanceConfig {
  int target = 0;
  std::array<double, 2> d0{0.07, 0.06};
  std::array<double, 2> d1_per_s{0.02, -0.04};
  std::array<double, 2> residual_amp{0.05, 0.06};
  double residual_freq_rad_s = 1.0;
  double residual_decay_per_s = 0.3;

  bool operator==(const DisturbanceConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  std::string trace = "trace.csv";
  std::string report = "report.txt";
  std::string sweep = "sweep.csv";
  std::string plot = "plots.py";

  bool operator==(const OutputConfig&) const = default;
};

/// Scenario description parsed from the JSON config document. Key names
/// carry their units (_s seconds, _m metres, _mps m/s, _rad radians).
struct ScenarioConfig {
  std::string scenario = "track";  // "track" | "ramp_reject" | "sweep"

  int formation_circles = 3;
  double formation_radius_step_m = 2.0;

  GainSet gains{};

  double delay_tau_s = 0.33;
  double delay_tau_max_s = 0.33;

  double leader_speed_mps = 0.3;
  double leader_heading_amplitude_rad = 0.7;
  double leader_heading_period_s = 20.0;
  std::array<double, 2> leader_start_m{0.0, 0.0};

  double sim_horizon_s = 60.0;
  double sim_dt_s = 1e-3;
  int sim_record_every = 100;
  std::uint64_t sim_seed = 0;
  double sim_init_perturbation_m = 0.1;

  std::optional<DisturbanceConfig> disturbance;
  CertificateConfig certificate;
  OutputConfig output;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses and validates the JSON config text. Unknown keys, type errors
/// and invariant violations raise ConfigError naming the offending path
/// (e.g. "/sim/dt_s"). Missing keys take the documented defaults.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config_file(const std::string& path);

/// Canonical JSON emission; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

/// Library-facing experiment settings derived from a scenario config.
ExperimentConfig to_experiment(const ScenarioConfig& config);
ExperimentKind scenario_kind(const ScenarioConfig& config);

/// CSV rows `t,agent_id,circle,dev_p,x1,x2,r1_1,r1_2,r2_1,r2_2,bound`
/// (one row per record and agent, 17 significant digits, bound empty when
/// absent). circle_of maps agent -> 1-based circle; pass {} for none.
void emit_trace(const std::vector<TraceRecord>& records, const std::vector<int>& circle_of,
                std::ostream& os);

/// `key: value` lines.
void emit_report(const CertificateReport& report, std::ostream& os);

/// CSV rows `circles,circle,max_dev_m`, one per (K, circle) pair.
void emit_sweep(const SweepResult& sweep, std::ostream& os);

/// Python/matplotlib script reproducing the trajectory, per-circle
/// deviation and deviation-trace panels from the emitted CSVs.
void emit_plotscript(const OutputConfig& output, std::ostream& os);

}  // namespace mplex
