#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mplex/halanay.hpp"
#include "mplex/network.hpp"
#include "mplex/simulate.hpp"

using namespace mplex;

TEST_CASE("rate equation analytic cases") {
  // b = 0 reduces to lambda = -a for any delay
  CHECK(halanay_rate(-1.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(halanay_rate(-1.0, 0.0, 7.3) == doctest::Approx(1.0).epsilon(1e-12));
  // tau = 0 reduces to lambda = -(a + b)
  CHECK(halanay_rate(-2.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rate for a=-2, b=1, tau=1") {
  // root of lambda - 2 + e^lambda = 0, confirmed with an independent
  // root finder (scipy.optimize.brentq): 0.442854401002389
  CHECK(std::fabs((halanay_rate(-2.0, 1.0, 1.0)) - (0.442854401002389)) <= 1e-9);
}

TEST_CASE("rate infeasible when a + b >= 0") {
  CHECK_THROWS_AS(halanay_rate(-1.0, 1.0, 0.5), InfeasibleError);
  CHECK_THROWS_AS(halanay_rate(-1.0, 2.0, 0.5), InfeasibleError);
  CHECK_THROWS_AS(halanay_rate(-1.0, -0.5, 0.5), ConfigError);
}

TEST_CASE("rate monotonicity") {
  double prev = halanay_rate(-2.0, 0.5, 0.0);
  for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double r = halanay_rate(-2.0, 0.5, tau);
    CHECK(r < prev);
    prev = r;
  }
  prev = halanay_rate(-3.0, 0.1, 1.0);
  for (double b : {0.5, 1.0, 1.5, 2.0}) {
    const double r = halanay_rate(-3.0, b, 1.0);
    CHECK(r < prev);
    prev = r;
  }
  prev = halanay_rate(-1.0, 0.5, 1.0);
  for (double a : {-1.5, -2.0, -3.0, -5.0}) {
    const double r = halanay_rate(a, 0.5, 1.0);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("bound closed forms") {
  CHECK(halanay_bound(HalanayParams(-1.0, 0.5, 0.0, 0.3), 2.5, 0.0) == doctest::Approx(2.5));
  const HalanayParams only_offset(-2.0, 0.5, 1.5, 0.4, 1.5);
  for (double t : {0.0, 1.0, 10.0}) {
    CHECK(halanay_bound(only_offset, 0.0, t) == doctest::Approx(1.0));
  }
  // e^{-5 * 0.4428544...} + 0.5
  const HalanayParams p(-2.0, 1.0, 0.5, 1.0, 1.0);
  CHECK(std::fabs((halanay_bound(p, 1.0, 5.0)) - (0.609233006391196)) <= 1e-9);
}

TEST_CASE("params validation") {
  CHECK_THROWS_AS(HalanayParams(0.5, 0.0, 0.0, 0.1), ConfigError);   // a >= 0
  CHECK_THROWS_AS(HalanayParams(-1.0, -0.1, 0.0, 0.1), ConfigError); // b < 0
  CHECK_THROWS_AS(HalanayParams(-1.0, 0.5, -0.1, 0.1), ConfigError); // c < 0
  CHECK_THROWS_AS(HalanayParams(-1.0, 0.5, 0.0, 0.1, 0.8), ConfigError);  // a + b > -sigma
  CHECK_NOTHROW(HalanayParams(-1.0, 0.5, 0.0, 0.1, 0.5));
}

namespace {

// Single-agent delayed scalar system u' = a u + b u(t - tau) + c via the
// closed-loop machinery: a u + c through f, b u(t - tau) through a delayed
// layer-0 coupling, multiplex layers silent.
NetworkSystem scalar_delay_system(double a, double b, double c, double tau, double u0) {
  NetworkSystem sys;
  sys.N = 1;
  sys.n = 1;
  sys.agents.push_back({1,
                        [a, c](std::span<const double> x, double) { return Vec{a * x[0] + c}; },
                        [a](std::span<const double>, double) { return Matrix(1, 1, {a}); }});
  sys.disturbances.push_back({Vec{0.0}, Vec{0.0}, {}});
  CouplingSet cs;
  cs.delayed[0] = [b](std::span<const double> xd, std::span<const double>, double) {
    return Vec{b * xd[0]};
  };
  sys.couplings.push_back(cs);
  sys.neighbors.push_back({0});
  sys.delay = DelayFunction::constant(tau);
  sys.history = [u0](double) { return Vec{u0, 0.0, 0.0}; };
  return sys;
}

}  // namespace

TEST_CASE("simulated delayed scalar system stays under the bound") {
  struct Params {
    double a, b, c, tau, u0;
  };
  const Params sets[] = {
      {-2.0, 1.0, 0.5, 0.5, 1.0}, {-1.0, 0.2, 0.0, 1.0, 2.0},  {-3.0, 2.0, 1.0, 0.3, 0.5},
      {-0.8, 0.1, 0.2, 2.0, 1.0}, {-5.0, 0.5, 0.0, 0.1, 3.0},
  };
  for (const Params& ps : sets) {
    const NetworkSystem sys = scalar_delay_system(ps.a, ps.b, ps.c, ps.tau, ps.u0);
    IntegrateOptions opt;
    opt.t_end = 10.0;
    opt.dt = 1e-3;
    opt.record_every = 20;
    const auto trace = integrate(sys, opt);
    const HalanayParams hp(ps.a, ps.b, ps.c, ps.tau);
    for (const TraceRecord& rec : trace) {
      CHECK(rec.x[0] <= halanay_bound(hp, ps.u0, rec.t) + 1e-9);
    }
  }
}
