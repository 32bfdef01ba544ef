#include "mplex/formation.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "mplex/errors.hpp"

namespace mplex {
namespace {

constexpr double kPi = std::numbers::pi;

double sqr(double v) { return v * v; }

// Largest |w_i(t)|_p over the recording grid; disturbances decay, so the
// grid maximum matches the analytic supremum to recording resolution.
double residual_sup(const ExperimentConfig& cfg, const RampDisturbance& d, PNorm p) {
  double best = 0.0;
  const long steps = std::lround(cfg.horizon / cfg.dt);
  for (long k = 0; k <= steps; ++k) {
    const double t = cfg.dt * k;
    const double envelope = std::sin(d.residual_freq * t) * std::exp(-d.residual_decay * t);
    const Vec w{d.residual_amp[0] * envelope, d.residual_amp[1] * envelope};
    best = std::max(best, vec_norm(p, w));
  }
  return best;
}

}  // namespace

double wrap_angle(double theta) {
  double w = std::remainder(theta, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

std::array<double, 2> hand_position(const UnicycleState& s, double l) {
  if (l <= 0.0) throw ConfigError("hand distance l must be positive");
  return {s.p[0] + l * std::cos(s.theta), s.p[1] + l * std::sin(s.theta)};
}

std::array<double, 2> hand_dynamics(const UnicycleState& s, std::array<double, 2> u,
                                    std::array<double, 2> d, double l) {
  if (l <= 0.0) throw ConfigError("hand distance l must be positive");
  const double c = std::cos(s.theta);
  const double sn = std::sin(s.theta);
  return {c * u[0] - l * sn * u[1] + d[0], sn * u[0] + l * c * u[1] + d[1]};
}

std::array<double, 2> feedback_linearize(double theta, double l, std::array<double, 2> nu) {
  if (l <= 0.0) throw ConfigError("hand distance l must be positive");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * nu[0] + s * nu[1], (-s * nu[0] + c * nu[1]) / l};
}

void GainSet::validate() const {
  for (double g : {k0, k1, k2, k0_tau, k1_tau, k2_tau, k_psi}) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("all control gains must be positive");
  }
}

FormationSpec FormationSpec::concentric(int circles, double radius_step) {
  if (circles < 1) throw ConfigError("formation needs at least one circle");
  if (!(radius_step > 0.0)) throw ConfigError("radius step must be positive");

  FormationSpec spec;
  spec.circles = circles;
  spec.radius_step = radius_step;

  for (int k = 1; k <= circles; ++k) {
    const int count = 4 * k;
    for (int m = 0; m < count; ++m) {
      const double ang = 2.0 * kPi * m / count;
      spec.offsets.push_back({k * radius_step * std::cos(ang), k * radius_step * std::sin(ang)});
      spec.circle_of.push_back(k);
    }
  }

  const int total = spec.robot_count();
  spec.neighbors.resize(total);
  spec.delta_nbr.resize(total);
  for (int k = 1; k <= circles; ++k) {
    const int first = spec.first_robot_on_circle(k);
    const int count = 4 * k;
    for (int m = 0; m < count; ++m) {
      const int i = first + m;
      std::vector<int> nbrs{first + (m + 1) % count, first + (m - 1 + count) % count};
      if (k > 1) {
        const int inner_first = spec.first_robot_on_circle(k - 1);
        const int inner_count = 4 * (k - 1);
        int closest = inner_first;
        double best = std::numeric_limits<double>::infinity();
        for (int j = inner_first; j < inner_first + inner_count; ++j) {
          const double d2 = sqr(spec.offsets[i][0] - spec.offsets[j][0]) +
                            sqr(spec.offsets[i][1] - spec.offsets[j][1]);
          if (d2 < best) {  // strict: ties keep the lowest index
            best = d2;
            closest = j;
          }
        }
        nbrs.push_back(closest);
      }
      spec.neighbors[i] = std::move(nbrs);
    }
  }

  spec.delta_leader.resize(total);
  for (int i = 0; i < total; ++i) {
    spec.delta_leader[i] = {-spec.offsets[i][0], -spec.offsets[i][1]};
    for (int j : spec.neighbors[i]) {
      spec.delta_nbr[i].push_back({spec.offsets[j][0] - spec.offsets[i][0],
                                   spec.offsets[j][1] - spec.offsets[i][1]});
    }
  }
  spec.validate();
  return spec;
}

int FormationSpec::first_robot_on_circle(int k) const {
  // circles 1..k-1 hold 4 + 8 + ... = 2k(k-1) robots
  return 2 * k * (k - 1);
}

void FormationSpec::validate() const {
  if (circles < 1) throw ConfigError("formation needs at least one circle");
  const int expected = 2 * circles * (circles + 1);
  if (robot_count() != expected) {
    throw ConfigError("formation must hold 4k robots on circle k (expected " +
                      std::to_string(expected) + ", got " + std::to_string(robot_count()) + ")");
  }
  if (static_cast<int>(neighbors.size()) != robot_count() ||
      static_cast<int>(delta_leader.size()) != robot_count() ||
      static_cast<int>(delta_nbr.size()) != robot_count() ||
      static_cast<int>(circle_of.size()) != robot_count()) {
    throw DimensionError("formation arrays must cover every robot");
  }
  for (int i = 0; i < robot_count(); ++i) {
    if (static_cast<int>(neighbors[i].size()) > 3) {
      throw ConfigError("robot " + std::to_string(i) + " has more than 3 neighbours");
    }
    if (neighbors[i].size() != delta_nbr[i].size()) {
      throw DimensionError("neighbour offsets must align with the neighbour list");
    }
    for (std::size_t a = 0; a < neighbors[i].size(); ++a) {
      const int j = neighbors[i][a];
      // delta*_{ji} = delta*_{li} - delta*_{lj}
      for (int c = 0; c < 2; ++c) {
        const double expected_off = delta_leader[i][c] - delta_leader[j][c];
        if (std::fabs(delta_nbr[i][a][c] - expected_off) > 1e-9) {
          throw ConfigError("inconsistent offsets between robots " + std::to_string(j) + " and " +
                            std::to_string(i));
        }
      }
    }
  }
}

LeaderPath::LeaderPath(double speed, double amplitude, double period, std::array<double, 2> start)
    : speed_(speed), amplitude_(amplitude), period_(period), start_(start) {
  if (speed < 0.0) throw ConfigError("leader speed must be nonnegative");
  if (!(period > 0.0)) throw ConfigError("leader heading period must be positive");
  if (amplitude < 0.0) throw ConfigError("leader heading amplitude must be nonnegative");
  omega_ = 2.0 * kPi / period;
  // Jacobi-Anger coefficients J_m(amplitude); the tail decays
  // superexponentially for m > amplitude, terms below 1e-18 are dropped.
  for (int m = 0; m <= 60; ++m) {
    const double jm = std::cyl_bessel_j(m, amplitude);
    if (m > 1 && m > amplitude && std::fabs(jm) < 1e-18) break;
    bessel_.push_back(jm);
  }
}

std::array<double, 2> LeaderPath::velocity(double t) const {
  const double chi = amplitude_ * std::sin(omega_ * t);
  return {speed_ * std::cos(chi), speed_ * std::sin(chi)};
}

std::array<double, 2> LeaderPath::position(double t) const {
  // integral of cos(chi(s)) ds = J0 t + sum_{k>=1} 2 J_{2k} sin(2k w t) / (2k w)
  // integral of sin(chi(s)) ds = sum_{k>=0} 2 J_{2k+1} (1 - cos((2k+1) w t)) / ((2k+1) w)
  double ix = bessel_[0] * t;
  for (std::size_t m = 2; m < bessel_.size(); m += 2) {
    ix += 2.0 * bessel_[m] * std::sin(m * omega_ * t) / (m * omega_);
  }
  double iy = 0.0;
  for (std::size_t m = 1; m < bessel_.size(); m += 2) {
    iy += 2.0 * bessel_[m] * (1.0 - std::cos(m * omega_ * t)) / (m * omega_);
  }
  return {start_[0] + speed_ * ix, start_[1] + speed_ * iy};
}

NetworkSystem build_formation(const FormationSpec& spec, const GainSet& gains, const LeaderPath& leader,
                              const DelayFunction& delay, const std::vector<RampDisturbance>& disturbances,
                              const InitialState& init) {
  spec.validate();
  gains.validate();
  const int N = spec.robot_count();
  const int n = 2;

  NetworkSystem sys;
  sys.N = N;
  sys.n = n;
  sys.agents.assign(N, AgentDynamics{n, {}, {}});  // f == 0 for hand-position agents
  sys.neighbors = spec.neighbors;
  sys.leader_links.assign(N, {0});
  sys.delay = delay;

  sys.leader.M = 1;
  sys.leader.x_l = [leader](double t) {
    const auto p = leader.position(t);
    return Vec{p[0], p[1]};
  };
  sys.leader.v_l = [leader](double t) {
    const auto v = leader.velocity(t);
    return Vec{v[0], v[1]};
  };
  sys.feedforward = sys.leader.v_l;

  const std::vector<std::array<double, 2>> offsets = spec.offsets;
  sys.desired = [leader, offsets, n](double t) {
    const auto pl = leader.position(t);
    Vec out(offsets.size() * n);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      out[i * n] = pl[0] + offsets[i][0];
      out[i * n + 1] = pl[1] + offsets[i][1];
    }
    return out;
  };

  const std::array<double, 3> k{gains.k0, gains.k1, gains.k2};
  const std::array<double, 3> k_tau{gains.k0_tau, gains.k1_tau, gains.k2_tau};
  const double k_psi = gains.k_psi;

  sys.couplings.resize(N);
  for (int i = 0; i < N; ++i) {
    const std::array<double, 2> dl = spec.delta_leader[i];
    const std::vector<int> nbrs = spec.neighbors[i];
    const std::vector<std::array<double, 2>> dn = spec.delta_nbr[i];

    for (int m = 0; m < 3; ++m) {
      const double km = k[m];
      sys.couplings[i].delay_free[m] = [km, dl, i, n](std::span<const double> x,
                                                      std::span<const double> x_l, double) {
        Vec out(n);
        for (int c = 0; c < n; ++c) out[c] = km * (x_l[c] - x[static_cast<std::size_t>(i) * n + c] - dl[c]);
        return out;
      };
      sys.couplings[i].delay_free_jacobian[m] = [km, i, n](std::span<const double>,
                                                           std::span<const double>, double, int j) {
        Matrix jac(n, n);
        if (j == i) {
          for (int c = 0; c < n; ++c) jac(c, c) = -km;
        }
        return jac;
      };

      const double ktm = k_tau[m];
      sys.couplings[i].delayed[m] = [ktm, k_psi, nbrs, dn, i, n](std::span<const double> x,
                                                                 std::span<const double>, double) {
        Vec out(n, 0.0);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
          const std::size_t j = static_cast<std::size_t>(nbrs[a]);
          for (int c = 0; c < n; ++c) {
            const double arg = x[j * n + c] - x[static_cast<std::size_t>(i) * n + c] - dn[a][c];
            out[c] += ktm * std::tanh(k_psi * arg);
          }
        }
        return out;
      };
      // d/dx_j of the neighbour sum: +slope on the neighbour column,
      // -slope (summed over neighbours) on the self column.
      sys.couplings[i].delayed_jacobian[m] = [ktm, k_psi, nbrs, dn, i, n](std::span<const double> x,
                                                                          std::span<const double>, double,
                                                                          int j) {
        Matrix jac(n, n);
        const bool self = (j == i);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
          if (!self && nbrs[a] != j) continue;
          const std::size_t q = static_cast<std::size_t>(nbrs[a]);
          for (int c = 0; c < n; ++c) {
            const double arg = x[q * n + c] - x[static_cast<std::size_t>(i) * n + c] - dn[a][c];
            const double th = std::tanh(k_psi * arg);
            const double slope = ktm * k_psi * (1.0 - th * th);
            jac(c, c) += self ? -slope : slope;
          }
        }
        return jac;
      };
    }
  }

  sys.disturbances.assign(N, Disturbance{Vec(n, 0.0), Vec(n, 0.0), {}});
  for (const RampDisturbance& d : disturbances) {
    if (d.agent < 0 || d.agent >= N) throw ConfigError("disturbance target out of range");
    Disturbance dist;
    dist.d0 = {d.d0[0], d.d0[1]};
    dist.d1 = {d.d1[0], d.d1[1]};
    const std::array<double, 2> amp = d.residual_amp;
    const double freq = d.residual_freq;
    const double decay = d.residual_decay;
    if (amp[0] != 0.0 || amp[1] != 0.0) {
      dist.w = [amp, freq, decay](double t) {
        const double envelope = std::sin(freq * t) * std::exp(-decay * t);
        return Vec{amp[0] * envelope, amp[1] * envelope};
      };
    }
    sys.disturbances[d.agent] = std::move(dist);
  }

  sys.tanh_family = TanhFamilyInfo{k, k_tau, k_psi, 3};

  // Constant pre-horizon history: perturbed desired positions, zero
  // multiplex states.
  Vec x0 = sys.desired(0.0);
  std::mt19937_64 rng(init.seed);
  for (double& v : x0) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    v += init.perturbation * (2.0 * u - 1.0);
  }
  Vec z0(3 * n * N, 0.0);
  for (std::size_t q = 0; q < x0.size(); ++q) z0[q] = x0[q];
  sys.history = [z0](double) { return z0; };

  sys.validate();
  return sys;
}

RampDisturbance reference_disturbance() {
  RampDisturbance d;
  d.agent = 0;
  d.d0 = {0.07, 0.06};
  d.d1 = {0.02, -0.04};
  d.residual_amp = {0.05, 0.06};
  d.residual_freq = 1.0;
  d.residual_decay = 0.3;
  return d;
}

namespace {

struct BuiltScenario {
  NetworkSystem sys;
  FormationSpec spec;
};

BuiltScenario build_from_config(const ExperimentConfig& cfg, int circles,
                                const std::optional<RampDisturbance>& disturbance) {
  FormationSpec spec = FormationSpec::concentric(circles, cfg.radius_step);
  const LeaderPath leader(cfg.leader_speed, cfg.leader_amplitude, cfg.leader_period, cfg.leader_start);
  std::vector<RampDisturbance> dists;
  if (disturbance) dists.push_back(*disturbance);
  NetworkSystem sys = build_formation(spec, cfg.gains, leader, DelayFunction::constant(cfg.tau), dists,
                                      InitialState{cfg.init_perturbation, cfg.seed});
  return {std::move(sys), std::move(spec)};
}

CertificateReport certify_scenario(const NetworkSystem& sys, const ExperimentConfig& cfg,
                                   TransformT& transform) {
  transform = cfg.alpha ? TransformT::homogeneous(sys.N, cfg.alpha->first, cfg.alpha->second)
                        : select_alpha(sys, cfg.p, cfg.region);
  CertifyOptions opt;
  opt.p = cfg.p;
  opt.region = cfg.region;
  opt.c1_horizon = cfg.horizon;
  CertificateReport report = certify(sys, transform, opt, cfg.tau_max);
  if (!report.feasible) {
    std::cerr << "warning: certificate infeasible (sigma_bar = " << report.sigma_bar
              << ", sigma_underbar = " << report.sigma_underbar
              << "); deviation bounds will not be attached\n";
  }
  return report;
}

// Supremum terms of the deviation bound for a constant pre-horizon history.
void bound_inputs(const ExperimentConfig& cfg, const std::optional<RampDisturbance>& disturbance,
                  const TraceRecord& first, double& init_dev, double& init_mplx, double& w_sup) {
  init_dev = 0.0;
  for (double d : first.deviation) init_dev = std::max(init_dev, d);

  // r == 0 on the initial window, so the multiplex term reduces to
  // sup_{-tau_max <= s <= 0} |d0 + d1 s|_p + |d1|_p; the sup of the affine
  // segment is attained at an endpoint.
  init_mplx = 0.0;
  w_sup = 0.0;
  if (disturbance) {
    const Vec d0{disturbance->d0[0], disturbance->d0[1]};
    const Vec d1{disturbance->d1[0], disturbance->d1[1]};
    const Vec at_left{d0[0] - d1[0] * cfg.tau_max, d0[1] - d1[1] * cfg.tau_max};
    const double sup_r1 = std::max(vec_norm(cfg.p, d0), vec_norm(cfg.p, at_left));
    init_mplx = sup_r1 + vec_norm(cfg.p, d1);
    w_sup = residual_sup(cfg, *disturbance, cfg.p);
  }
}

}  // namespace

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentConfig& config) {
  config.gains.validate();
  if (config.tau > config.tau_max) throw ConfigError("tau must not exceed tau_max");

  std::optional<RampDisturbance> disturbance = config.disturbance;
  if (!disturbance && kind != ExperimentKind::Track) disturbance = reference_disturbance();

  if (kind == ExperimentKind::Sweep) {
    ExperimentResult result;
    SweepResult sweep;
    for (int circles = 1; circles <= config.circles; ++circles) {
      BuiltScenario built = build_from_config(config, circles, disturbance);
      if (circles == config.circles) {
        TransformT transform = TransformT::identity(built.sys.N);
        result.certificate = certify_scenario(built.sys, config, transform);
        result.spec = built.spec;
      }
      IntegrateOptions opt{0.0, config.horizon, config.dt, config.record_every, config.p};
      const std::vector<TraceRecord> traces = integrate(built.sys, opt);
      Vec per_circle(circles, 0.0);
      for (const TraceRecord& rec : traces) {
        for (int i = 0; i < built.sys.N; ++i) {
          const int c = built.spec.circle_of[i] - 1;
          per_circle[c] = std::max(per_circle[c], rec.deviation[i]);
        }
      }
      sweep.circle_counts.push_back(circles);
      sweep.max_deviation.push_back(std::move(per_circle));
    }
    result.sweep = std::move(sweep);
    return result;
  }

  BuiltScenario built = build_from_config(config, config.circles, disturbance);
  ExperimentResult result;
  result.spec = built.spec;

  TransformT transform = TransformT::identity(built.sys.N);
  result.certificate = certify_scenario(built.sys, config, transform);

  IntegrateOptions opt{0.0, config.horizon, config.dt, config.record_every, config.p};
  result.traces = integrate(built.sys, opt);

  bound_inputs(config, disturbance, result.traces.front(), result.init_dev, result.init_mplx,
               result.w_sup);
  if (result.certificate.feasible) {
    for (TraceRecord& rec : result.traces) {
      rec.bound = deviation_bound(result.certificate, result.init_dev, result.init_mplx, result.w_sup, rec.t);
    }
  }
  return result;
}

}  // namespace mplex
