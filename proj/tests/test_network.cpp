#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mplex/formation.hpp"
#include "mplex/network.hpp"
#include "support.hpp"

using namespace mplex;

namespace {

NetworkSystem small_formation(int circles, double perturbation = 0.0,
                              std::vector<RampDisturbance> dists = {}) {
  const FormationSpec spec = FormationSpec::concentric(circles, 2.0);
  const LeaderPath leader(0.3, 0.7, 20.0);
  return build_formation(spec, GainSet{}, leader, DelayFunction::constant(0.33), dists,
                         InitialState{perturbation, 99});
}

}  // namespace

TEST_CASE("rhs of the empty system is zero") {
  NetworkSystem sys;
  sys.N = 2;
  sys.n = 2;
  sys.agents.assign(2, AgentDynamics{2, {}, {}});
  sys.disturbances.assign(2, Disturbance{Vec{0.0, 0.0}, Vec{0.0, 0.0}, {}});
  sys.couplings.assign(2, CouplingSet{});
  sys.neighbors.assign(2, {});
  const Vec z(12, 0.0);
  for (double v : closed_loop_rhs(sys, z, z, 1.5)) CHECK(v == 0.0);
}

TEST_CASE("rhs at the desired solution follows the reference exactly") {
  const NetworkSystem sys = small_formation(1);
  const double t = 2.25;
  const Vec xstar = sys.desired(t);
  Vec z(sys.stacked_dim(), 0.0);
  for (std::size_t k = 0; k < xstar.size(); ++k) z[k] = xstar[k];
  const Vec dz = closed_loop_rhs(sys, z, z, t);
  const Vec vl = sys.feedforward(t);
  for (int i = 0; i < sys.N; ++i) {
    for (int c = 0; c < 2; ++c) {
      CHECK(std::fabs((dz[i * 2 + c]) - (vl[c])) <= 1e-12);
      CHECK(std::fabs((dz[sys.n * sys.N + i * 2 + c]) - (0.0)) <= 1e-12);
      CHECK(std::fabs((dz[2 * sys.n * sys.N + i * 2 + c]) - (0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("single agent under a ramp matches the hand-integrated polynomial") {
  NetworkSystem sys;
  sys.N = 1;
  sys.n = 1;
  sys.agents.assign(1, AgentDynamics{1, {}, {}});
  sys.disturbances.assign(1, Disturbance{Vec{0.3}, Vec{0.2}, {}});
  sys.couplings.assign(1, CouplingSet{});
  sys.neighbors.assign(1, {});
  sys.history = [](double) { return Vec{1.0, 0.0, 0.0}; };

  // xdot = 0.3 + 0.2 t + r1, r1dot = r2 = 0 => x(t) = 1 + 0.3 t + 0.1 t^2
  IntegrateOptions opt;
  opt.t_end = 0.5;
  opt.dt = 0.5;  // one RK4 step; exact on this polynomial
  const auto trace = integrate(sys, opt);
  CHECK(trace.back().x[0] == doctest::Approx(1.0 + 0.3 * 0.5 + 0.1 * 0.25).epsilon(1e-15));
  CHECK(trace.back().r1[0] == 0.0);
  CHECK(trace.back().r2[0] == 0.0);
}

TEST_CASE("check_c1 passes on the formation and fails on a biased coupling") {
  NetworkSystem sys = small_formation(2);
  Vec grid(100);
  for (int k = 0; k < 100; ++k) grid[k] = 60.0 * k / 99.0;

  const C1Result ok = check_c1(sys, grid);
  CHECK(ok.pass);
  CHECK(ok.max_residual <= 1e-12);

  // constant bias on one delay-free layer
  const CouplingFn original = sys.couplings[3].delay_free[1];
  sys.couplings[3].delay_free[1] = [original](std::span<const double> x, std::span<const double> xl,
                                              double t) {
    Vec v = original(x, xl, t);
    v[0] += 0.1;
    return v;
  };
  const C1Result bad = check_c1(sys, grid);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_residual == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(bad.worst_agent == 3);
  CHECK(bad.worst_layer == 1);
  CHECK_FALSE(bad.worst_delayed);
}

TEST_CASE("disturbance evaluation") {
  const Disturbance zero{Vec{0.0, 0.0}, Vec{0.0, 0.0}, {}};
  for (double t : {0.0, 1.0, 100.0}) {
    for (double v : disturbance_eval(zero, t)) CHECK(v == 0.0);
  }

  RampDisturbance ref = reference_disturbance();
  Disturbance d;
  d.d0 = {ref.d0[0], ref.d0[1]};
  d.d1 = {ref.d1[0], ref.d1[1]};
  d.w = [&ref](double t) {
    const double e = std::sin(ref.residual_freq * t) * std::exp(-ref.residual_decay * t);
    return Vec{ref.residual_amp[0] * e, ref.residual_amp[1] * e};
  };
  const Vec at0 = disturbance_eval(d, 0.0);
  CHECK(at0[0] == doctest::Approx(0.07));
  CHECK(at0[1] == doctest::Approx(0.06));

  // independent componentwise evaluation
  const Vec at1 = disturbance_eval(d, 1.0);
  CHECK(at1[0] == doctest::Approx(0.07 + 0.02 + 0.05 * std::sin(1.0) * std::exp(-0.3)));
  CHECK(at1[1] == doctest::Approx(0.06 - 0.04 + 0.06 * std::sin(1.0) * std::exp(-0.3)));
}

TEST_CASE("coupling Jacobians match central differences") {
  const NetworkSystem sys = small_formation(2);
  std::mt19937_64 rng(31);
  const int nN = sys.n * sys.N;
  Vec x = sys.desired(0.0);
  for (double& v : x) v += test::uniform(rng, -0.5, 0.5);
  const Vec x_l = sys.leader.x_l(0.0);

  const double eps = 1e-6;
  for (int i : {0, 5, 11}) {
    const CouplingSet& c = sys.couplings[i];
    std::vector<int> targets = sys.neighbors[i];
    targets.push_back(i);
    for (int m = 0; m < 3; ++m) {
      for (int delayed = 0; delayed < 2; ++delayed) {
        const CouplingFn& fn = delayed ? c.delayed[m] : c.delay_free[m];
        const CouplingJacobianFn& jac = delayed ? c.delayed_jacobian[m] : c.delay_free_jacobian[m];
        for (int j : targets) {
          const Matrix analytic = jac(x, x_l, 0.0, j);
          for (int col = 0; col < sys.n; ++col) {
            Vec xp = x, xm = x;
            xp[j * sys.n + col] += eps;
            xm[j * sys.n + col] -= eps;
            const Vec fp = fn(xp, x_l, 0.0);
            const Vec fm = fn(xm, x_l, 0.0);
            for (int row = 0; row < sys.n; ++row) {
              const double fd = (fp[row] - fm[row]) / (2.0 * eps);
              CHECK(analytic(row, col) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
            }
          }
        }
      }
    }
  }
  CHECK(nN == 24);
}

TEST_CASE("rhs is affine in the multiplex states") {
  const NetworkSystem sys = small_formation(1);
  std::mt19937_64 rng(57);
  const int nN = sys.n * sys.N;
  Vec z(sys.stacked_dim());
  for (double& v : z) v = test::uniform(rng, -1.0, 1.0);
  Vec ra = test::random_vec(rng, 2 * nN);
  Vec rb = test::random_vec(rng, 2 * nN);

  auto with_r = [&](const Vec& r) {
    Vec zz = z;
    for (int k = 0; k < 2 * nN; ++k) zz[nN + k] = r[k];
    return closed_loop_rhs(sys, zz, zz, 0.7);
  };
  Vec sum(2 * nN);
  for (int k = 0; k < 2 * nN; ++k) sum[k] = ra[k] + rb[k];

  const Vec fa = with_r(ra);
  const Vec fb = with_r(rb);
  const Vec f0 = with_r(Vec(2 * nN, 0.0));
  const Vec fs = with_r(sum);
  for (int k = 0; k < sys.stacked_dim(); ++k) {
    CHECK(std::fabs((fs[k]) - (fa[k] + fb[k] - f0[k])) <= 1e-12);
  }
}

TEST_CASE("desired solution satisfies its own dynamics") {
  const NetworkSystem sys = small_formation(2);
  Vec grid{0.0, 1.0, 7.5, 33.3, 59.0};
  CHECK(desired_solution_residual(sys, grid) < 1e-8);
}

TEST_CASE("delay function validates its bound") {
  DelayFunction d;
  d.tau = [](double t) { return t < 1.0 ? 0.2 : 0.9; };
  d.tau_max = 0.5;
  CHECK(d.eval(0.0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(d.eval(2.0), ConfigError);
}

TEST_CASE("system validation catches shape mistakes") {
  NetworkSystem sys;
  sys.N = 2;
  sys.n = 1;
  sys.agents.assign(1, AgentDynamics{1, {}, {}});  // wrong count
  sys.disturbances.assign(2, Disturbance{Vec{0.0}, Vec{0.0}, {}});
  sys.couplings.assign(2, CouplingSet{});
  sys.neighbors.assign(2, {});
  CHECK_THROWS_AS(sys.validate(), DimensionError);
}
