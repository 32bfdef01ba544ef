#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mplex/formation.hpp"
#include "support.hpp"

using namespace mplex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("hand dynamics closed forms") {
  UnicycleState s;
  s.theta = 0.0;
  auto v = hand_dynamics(s, {1.0, 0.0}, {0.0, 0.0}, 0.7);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(std::fabs((v[1]) - (0.0)) <= 1e-15);

  s.theta = kPi / 2.0;
  v = hand_dynamics(s, {0.0, 1.0}, {0.0, 0.0}, 0.5);
  CHECK(v[0] == doctest::Approx(-0.5));
  CHECK(std::fabs((v[1]) - (0.0)) <= 1e-12);
}

TEST_CASE("hand dynamics agrees with differentiating the hand position along the flow") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    UnicycleState s;
    s.p = {test::uniform(rng, -2.0, 2.0), test::uniform(rng, -2.0, 2.0)};
    s.theta = test::uniform(rng, -3.0, 3.0);
    const double l = test::uniform(rng, 0.2, 1.5);
    const std::array<double, 2> u{test::uniform(rng, -1.0, 1.0), test::uniform(rng, -1.0, 1.0)};

    // advance the wheel-axis state by +/- eps along the unicycle equations
    const double eps = 1e-6;
    auto flow = [&](double dir) {
      UnicycleState s2 = s;
      s2.p[0] += dir * eps * u[0] * std::cos(s.theta);
      s2.p[1] += dir * eps * u[0] * std::sin(s.theta);
      s2.theta += dir * eps * u[1];
      return hand_position(s2, l);
    };
    const auto fwd = flow(1.0);
    const auto bwd = flow(-1.0);
    const auto analytic = hand_dynamics(s, u, {0.0, 0.0}, l);
    CHECK(std::fabs((analytic[0]) - ((fwd[0] - bwd[0]) / (2 * eps))) <= 1e-6);
    CHECK(std::fabs((analytic[1]) - ((fwd[1] - bwd[1]) / (2 * eps))) <= 1e-6);
  }
}

TEST_CASE("feedback linearization closed forms and round trip") {
  auto u = feedback_linearize(1.234, 0.8, {0.0, 0.0});
  CHECK(u[0] == 0.0);
  CHECK(u[1] == 0.0);

  u = feedback_linearize(0.0, 1.0, {0.0, 1.0});
  CHECK(std::fabs((u[0]) - (0.0)) <= 1e-15);
  CHECK(u[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(feedback_linearize(0.0, 0.0, {1.0, 0.0}), ConfigError);

  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    UnicycleState s;
    s.theta = test::uniform(rng, -kPi, kPi);
    const double l = test::uniform(rng, 0.1, 2.0);
    const std::array<double, 2> nu{test::uniform(rng, -2.0, 2.0), test::uniform(rng, -2.0, 2.0)};
    const std::array<double, 2> d{test::uniform(rng, -1.0, 1.0), test::uniform(rng, -1.0, 1.0)};
    const auto eta_dot = hand_dynamics(s, feedback_linearize(s.theta, l, nu), d, l);
    CHECK(std::fabs((eta_dot[0]) - (nu[0] + d[0])) <= 1e-12);
    CHECK(std::fabs((eta_dot[1]) - (nu[1] + d[1])) <= 1e-12);
  }
}

TEST_CASE("formation geometry and neighbour caps") {
  const FormationSpec one = FormationSpec::concentric(1, 2.0);
  CHECK(one.robot_count() == 4);
  for (const auto& nbrs : one.neighbors) CHECK(nbrs.size() == 2);

  const FormationSpec three = FormationSpec::concentric(3, 2.0);
  CHECK(three.robot_count() == 24);

  const FormationSpec ten = FormationSpec::concentric(10, 2.0);
  CHECK(ten.robot_count() == 220);
  int histogram[4] = {0, 0, 0, 0};
  for (const auto& nbrs : ten.neighbors) {
    REQUIRE(nbrs.size() <= 3);
    ++histogram[nbrs.size()];
  }
  CHECK(histogram[0] == 0);
  CHECK(histogram[1] == 0);
  CHECK(histogram[2] == 4);    // circle 1 has no inner circle
  CHECK(histogram[3] == 216);

  // circle radii and populations
  for (int k = 1; k <= 10; ++k) {
    const int first = ten.first_robot_on_circle(k);
    CHECK(ten.circle_of[first] == k);
    const double r = std::hypot(ten.offsets[first][0], ten.offsets[first][1]);
    CHECK(r == doctest::Approx(2.0 * k));
  }
}

TEST_CASE("offset consistency holds and violations are caught") {
  FormationSpec spec = FormationSpec::concentric(2, 1.5);
  CHECK_NOTHROW(spec.validate());
  spec.delta_nbr[5][0][1] += 0.3;
  CHECK_THROWS_WITH_AS(spec.validate(),
                       doctest::Contains("inconsistent offsets"), ConfigError);
}

TEST_CASE("leader path position integrates its velocity") {
  const LeaderPath path(0.3, 0.7, 20.0, {1.0, -2.0});
  CHECK(path.position(0.0)[0] == doctest::Approx(1.0));
  CHECK(path.position(0.0)[1] == doctest::Approx(-2.0));

  // central difference of the series vs the closed-form velocity
  const double h = 1e-6;
  for (double t : {0.0, 1.7, 8.4, 33.0}) {
    const auto fwd = path.position(t + h);
    const auto bwd = path.position(t - h);
    const auto v = path.velocity(t);
    CHECK(std::fabs(((fwd[0] - bwd[0]) / (2 * h)) - (v[0])) <= 1e-8);
    CHECK(std::fabs(((fwd[1] - bwd[1]) / (2 * h)) - (v[1])) <= 1e-8);
    CHECK(std::hypot(v[0], v[1]) == doctest::Approx(0.3));
  }

  // zero amplitude degenerates to a straight line
  const LeaderPath line(0.5, 0.0, 20.0);
  CHECK(line.position(4.0)[0] == doctest::Approx(2.0));
  CHECK(std::fabs((line.position(4.0)[1]) - (0.0)) <= 1e-15);
}

TEST_CASE("repeating a run with rotated initial headings leaves hand traces unchanged") {
  // full unicycle closed loop (wheel states + heading), exact feedback
  // linearization; hand-position histories interpolated linearly for the
  // delayed couplings
  const FormationSpec spec = FormationSpec::concentric(1, 2.0);
  const GainSet g{};
  const LeaderPath leader(0.3, 0.7, 20.0);
  const double l = 0.4, tau = 0.33, dt = 1e-3, horizon = 2.0;
  const int N = spec.robot_count();

  auto run = [&](double heading_shift) {
    struct Robot {
      UnicycleState s;
      std::array<double, 2> r1{0.0, 0.0}, r2{0.0, 0.0};
    };
    std::vector<Robot> robots(N);
    for (int i = 0; i < N; ++i) {
      const auto eta0 = std::array<double, 2>{leader.position(0.0)[0] + spec.offsets[i][0],
                                              leader.position(0.0)[1] + spec.offsets[i][1]};
      robots[i].s.theta = wrap_angle(0.3 * i + heading_shift);
      // place the wheel axis so the hand position starts on the formation
      robots[i].s.p = {eta0[0] - l * std::cos(robots[i].s.theta),
                       eta0[1] - l * std::sin(robots[i].s.theta)};
    }

    const int steps = static_cast<int>(std::lround(horizon / dt));
    const int lag_steps = static_cast<int>(std::lround(tau / dt));
    std::vector<std::vector<std::array<double, 2>>> eta_hist(
        steps + 1, std::vector<std::array<double, 2>>(N));
    auto hands = [&](const std::vector<Robot>& rs) {
      std::vector<std::array<double, 2>> out(N);
      for (int i = 0; i < N; ++i) out[i] = hand_position(rs[i].s, l);
      return out;
    };
    eta_hist[0] = hands(robots);

    auto eta_delayed = [&](double t_stage, int step_limit) {
      const double s = t_stage - tau;
      if (s <= 0.0) return eta_hist[0];
      const double pos = s / dt;
      int k0 = static_cast<int>(pos);
      if (k0 >= step_limit) k0 = step_limit - 1;
      const double frac = pos - k0;
      std::vector<std::array<double, 2>> out(N);
      for (int i = 0; i < N; ++i) {
        for (int c = 0; c < 2; ++c) {
          out[i][c] = (1.0 - frac) * eta_hist[k0][i][c] + frac * eta_hist[k0 + 1][i][c];
        }
      }
      return out;
    };

    auto derivative = [&](const std::vector<Robot>& rs, double t,
                          const std::vector<std::array<double, 2>>& eta_del) {
      std::vector<Robot> d(N);
      const auto eta_l = leader.position(t);
      const auto v_l = leader.velocity(t);
      const auto eta_now = hands(rs);
      for (int i = 0; i < N; ++i) {
        std::array<double, 2> nu{0.0, 0.0};
        std::array<double, 2> layers[3] = {{0, 0}, {0, 0}, {0, 0}};
        const double lg[3] = {g.k0, g.k1, g.k2};
        const double dg[3] = {g.k0_tau, g.k1_tau, g.k2_tau};
        for (int m = 0; m < 3; ++m) {
          for (int c = 0; c < 2; ++c) {
            layers[m][c] = lg[m] * (eta_l[c] - eta_now[i][c] - (-spec.offsets[i][c]));
          }
          for (std::size_t a = 0; a < spec.neighbors[i].size(); ++a) {
            const int j = spec.neighbors[i][a];
            for (int c = 0; c < 2; ++c) {
              const double arg = eta_del[j][c] - eta_del[i][c] - spec.delta_nbr[i][a][c];
              layers[m][c] += dg[m] * std::tanh(g.k_psi * arg);
            }
          }
        }
        for (int c = 0; c < 2; ++c) nu[c] = layers[0][c] + v_l[c] + rs[i].r1[c];
        const auto u = feedback_linearize(rs[i].s.theta, l, nu);
        d[i].s.p = {u[0] * std::cos(rs[i].s.theta), u[0] * std::sin(rs[i].s.theta)};
        d[i].s.theta = u[1];
        for (int c = 0; c < 2; ++c) {
          d[i].r1[c] = layers[1][c] + rs[i].r2[c];
          d[i].r2[c] = layers[2][c];
        }
      }
      return d;
    };

    auto axpy = [&](const std::vector<Robot>& base, const std::vector<Robot>& dir, double w) {
      std::vector<Robot> out = base;
      for (int i = 0; i < N; ++i) {
        for (int c = 0; c < 2; ++c) {
          out[i].s.p[c] += w * dir[i].s.p[c];
          out[i].r1[c] += w * dir[i].r1[c];
          out[i].r2[c] += w * dir[i].r2[c];
        }
        out[i].s.theta += w * dir[i].s.theta;
      }
      return out;
    };

    for (int step = 0; step < steps; ++step) {
      const double t = step * dt;
      const auto k1 = derivative(robots, t, eta_delayed(t, step));
      const auto k2 = derivative(axpy(robots, k1, dt / 2), t + dt / 2, eta_delayed(t + dt / 2, step));
      const auto k3 = derivative(axpy(robots, k2, dt / 2), t + dt / 2, eta_delayed(t + dt / 2, step));
      const auto k4 = derivative(axpy(robots, k3, dt), t + dt, eta_delayed(t + dt, step));
      for (int i = 0; i < N; ++i) {
        for (int c = 0; c < 2; ++c) {
          robots[i].s.p[c] += dt / 6 * (k1[i].s.p[c] + 2 * k2[i].s.p[c] + 2 * k3[i].s.p[c] + k4[i].s.p[c]);
          robots[i].r1[c] += dt / 6 * (k1[i].r1[c] + 2 * k2[i].r1[c] + 2 * k3[i].r1[c] + k4[i].r1[c]);
          robots[i].r2[c] += dt / 6 * (k1[i].r2[c] + 2 * k2[i].r2[c] + 2 * k3[i].r2[c] + k4[i].r2[c]);
        }
        robots[i].s.theta +=
            dt / 6 * (k1[i].s.theta + 2 * k2[i].s.theta + 2 * k3[i].s.theta + k4[i].s.theta);
      }
      eta_hist[step + 1] = hands(robots);
    }
    return eta_hist.back();
  };

  const auto base = run(0.0);
  const auto rotated = run(1.1);
  for (int i = 0; i < N; ++i) {
    CHECK(std::fabs((base[i][0]) - (rotated[i][0])) <= 1e-9);
    CHECK(std::fabs((base[i][1]) - (rotated[i][1])) <= 1e-9);
  }
}

TEST_CASE("track experiment from the desired formation stays there") {
  ExperimentConfig cfg;
  cfg.circles = 1;
  cfg.horizon = 10.0;
  cfg.dt = 1e-3;
  cfg.record_every = 100;
  cfg.init_perturbation = 0.0;
  cfg.alpha = {-0.6, -1.6};
  const ExperimentResult res = run_experiment(ExperimentKind::Track, cfg);
  CHECK(res.certificate.feasible);
  for (const TraceRecord& rec : res.traces) {
    for (double d : rec.deviation) CHECK(d <= 1e-9);
  }
}

TEST_CASE("constant disturbance alone is rejected") {
  ExperimentConfig cfg;
  cfg.circles = 1;
  cfg.horizon = 40.0;
  cfg.dt = 1e-3;
  cfg.record_every = 200;
  cfg.init_perturbation = 0.0;
  cfg.alpha = {-0.6, -1.6};
  RampDisturbance d;
  d.agent = 0;
  d.d0 = {0.07, 0.06};
  d.d1 = {0.0, 0.0};
  d.residual_amp = {0.0, 0.0};
  cfg.disturbance = d;
  const ExperimentResult res = run_experiment(ExperimentKind::RampReject, cfg);
  double final_dev = 0.0;
  for (double v : res.traces.back().deviation) final_dev = std::max(final_dev, v);
  CHECK(final_dev < 1e-2);
}

TEST_CASE("pure ramp disturbance is rejected within the horizon") {
  ExperimentConfig cfg;
  cfg.circles = 1;
  cfg.horizon = 50.0;
  cfg.dt = 1e-3;
  cfg.record_every = 500;
  cfg.init_perturbation = 0.0;
  cfg.alpha = {-0.6, -1.6};
  RampDisturbance d = reference_disturbance();
  d.residual_amp = {0.0, 0.0};  // w == 0
  cfg.disturbance = d;
  const ExperimentResult res = run_experiment(ExperimentKind::RampReject, cfg);
  double final_dev = 0.0;
  for (double v : res.traces.back().deviation) final_dev = std::max(final_dev, v);
  CHECK(final_dev < 1e-2);
  // the bound holds along the way
  for (const TraceRecord& rec : res.traces) {
    REQUIRE(rec.bound.has_value());
    for (double v : rec.deviation) CHECK(v <= *rec.bound);
  }
}

TEST_CASE("sweep collects per-circle maxima for every configuration") {
  ExperimentConfig cfg;
  cfg.circles = 3;
  cfg.horizon = 5.0;
  cfg.dt = 2e-3;
  cfg.record_every = 10;
  cfg.init_perturbation = 0.0;
  cfg.alpha = {-0.6, -1.6};
  const ExperimentResult res = run_experiment(ExperimentKind::Sweep, cfg);
  REQUIRE(res.sweep.has_value());
  REQUIRE(res.sweep->circle_counts.size() == 3);
  for (std::size_t row = 0; row < 3; ++row) {
    CHECK(res.sweep->circle_counts[row] == static_cast<int>(row) + 1);
    CHECK(res.sweep->max_deviation[row].size() == row + 1);
  }
  // the perturbed circle dominates in every run
  for (std::size_t row = 1; row < 3; ++row) {
    const Vec& devs = res.sweep->max_deviation[row];
    for (std::size_t c = 1; c < devs.size(); ++c) CHECK(devs[c] <= devs[0]);
  }
}
