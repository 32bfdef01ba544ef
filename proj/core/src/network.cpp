#include "mplex/network.hpp"

#include <cmath>
#include <string>

#include "mplex/errors.hpp"
#include "mplex/norms.hpp"

namespace mplex {

Vec Disturbance::eval(double t) const {
  Vec out = w ? w(t) : Vec(d0.size(), 0.0);
  if (out.size() != d0.size() || d0.size() != d1.size()) {
    throw DimensionError("disturbance term sizes disagree");
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += d0[k] + d1[k] * t;
  return out;
}

bool Disturbance::is_zero() const {
  if (w) return false;
  for (double v : d0)
    if (v != 0.0) return false;
  for (double v : d1)
    if (v != 0.0) return false;
  return true;
}

Vec disturbance_eval(const Disturbance& d, double t) { return d.eval(t); }

bool CouplingSet::has_delayed() const {
  for (const auto& h : delayed)
    if (h) return true;
  return false;
}

DelayFunction DelayFunction::none() { return DelayFunction{}; }

DelayFunction DelayFunction::constant(double tau) {
  if (tau < 0.0) throw ConfigError("delay must be nonnegative");
  DelayFunction d;
  d.tau = [tau](double) { return tau; };
  d.tau_max = tau;
  return d;
}

double DelayFunction::eval(double t) const {
  if (!tau) return 0.0;
  const double v = tau(t);
  if (!(v >= 0.0) || v > tau_max * (1.0 + 1e-12) + 1e-15) {
    throw ConfigError("delay tau(t) = " + std::to_string(v) + " violates 0 <= tau <= tau_max = " +
                      std::to_string(tau_max) + " at t = " + std::to_string(t));
  }
  return v;
}

bool NetworkSystem::has_delayed_couplings() const {
  for (const auto& c : couplings)
    if (c.has_delayed()) return true;
  return false;
}

void NetworkSystem::validate() const {
  if (N <= 0 || n <= 0) throw ConfigError("network needs N >= 1 agents of dimension n >= 1");
  if (static_cast<int>(agents.size()) != N || static_cast<int>(disturbances.size()) != N ||
      static_cast<int>(couplings.size()) != N) {
    throw DimensionError("agents, disturbances and couplings must all have N entries");
  }
  for (const auto& a : agents) {
    if (a.n != n) throw DimensionError("all agents must share the state dimension n");
  }
  for (const auto& d : disturbances) {
    if (static_cast<int>(d.d0.size()) != n || static_cast<int>(d.d1.size()) != n) {
      throw DimensionError("disturbance terms must have dimension n");
    }
  }
  if (static_cast<int>(neighbors.size()) != N) throw DimensionError("neighbors must have N entries");
  if (!leader_links.empty() && static_cast<int>(leader_links.size()) != N) {
    throw DimensionError("leader_links must be empty or have N entries");
  }
  for (const auto& nbrs : neighbors) {
    for (int j : nbrs) {
      if (j < 0 || j >= N) throw ConfigError("neighbor index out of range");
    }
  }
  if (delay.tau_max < 0.0) throw ConfigError("tau_max must be nonnegative");
}

Vec closed_loop_rhs(const NetworkSystem& sys, std::span<const double> z,
                    std::span<const double> z_delayed, double t) {
  const int n = sys.n;
  const int nN = n * sys.N;
  if (static_cast<int>(z.size()) != 3 * nN || static_cast<int>(z_delayed.size()) != 3 * nN) {
    throw DimensionError("closed_loop_rhs: stacked state must have length 3nN");
  }

  const auto x = z.subspan(0, nN);
  const auto r1 = z.subspan(nN, nN);
  const auto r2 = z.subspan(2 * nN, nN);
  const auto x_delayed = z_delayed.subspan(0, nN);

  const bool any_delayed = sys.has_delayed_couplings();
  Vec x_l, x_l_delayed;
  if (sys.leader.x_l) {
    x_l = sys.leader.x_l(t);
    if (any_delayed) x_l_delayed = sys.leader.x_l(t - sys.delay.eval(t));
  }
  Vec ff;
  if (sys.feedforward) {
    ff = sys.feedforward(t);
    if (static_cast<int>(ff.size()) != n) throw DimensionError("feedforward must have dimension n");
  }

  Vec out(3 * nN, 0.0);
  Vec layer[3];
  for (int i = 0; i < sys.N; ++i) {
    const auto xi = x.subspan(static_cast<std::size_t>(i) * n, n);
    for (int m = 0; m < 3; ++m) layer[m].assign(n, 0.0);

    const CouplingSet& c = sys.couplings[i];
    for (int m = 0; m < 3; ++m) {
      if (c.delay_free[m]) {
        Vec h = c.delay_free[m](x, x_l, t);
        if (static_cast<int>(h.size()) != n) throw DimensionError("coupling output must have dimension n");
        for (int k = 0; k < n; ++k) layer[m][k] += h[k];
      }
      if (c.delayed[m]) {
        Vec h = c.delayed[m](x_delayed, x_l_delayed, t);
        if (static_cast<int>(h.size()) != n) throw DimensionError("coupling output must have dimension n");
        for (int k = 0; k < n; ++k) layer[m][k] += h[k];
      }
    }

    Vec fx;
    if (sys.agents[i].f) {
      fx = sys.agents[i].f(xi, t);
      if (static_cast<int>(fx.size()) != n) throw DimensionError("agent dynamics must have dimension n");
    }
    const Vec di = sys.disturbances[i].eval(t);

    double* dx = out.data() + static_cast<std::size_t>(i) * n;
    double* dr1 = out.data() + nN + static_cast<std::size_t>(i) * n;
    double* dr2 = out.data() + 2 * nN + static_cast<std::size_t>(i) * n;
    for (int k = 0; k < n; ++k) {
      double v = layer[0][k] + r1[static_cast<std::size_t>(i) * n + k] + di[k];
      if (!fx.empty()) v += fx[k];
      if (!ff.empty()) v += ff[k];
      dx[k] = v;
      dr1[k] = layer[1][k] + r2[static_cast<std::size_t>(i) * n + k];
      dr2[k] = layer[2][k];
    }
  }
  return out;
}

C1Result check_c1(const NetworkSystem& sys, std::span<const double> t_samples) {
  if (!sys.desired) throw ConfigError("check_c1 needs the desired solution");
  C1Result res;
  res.pass = true;
  for (double t : t_samples) {
    const Vec xstar = sys.desired(t);
    if (static_cast<int>(xstar.size()) != sys.n * sys.N) {
      throw DimensionError("desired solution must have length nN");
    }
    const Vec x_l = sys.leader.x_l ? sys.leader.x_l(t) : Vec{};
    for (int i = 0; i < sys.N; ++i) {
      const CouplingSet& c = sys.couplings[i];
      for (int m = 0; m < 3; ++m) {
        for (int delayed = 0; delayed < 2; ++delayed) {
          const CouplingFn& h = delayed ? c.delayed[m] : c.delay_free[m];
          if (!h) continue;
          const double r = vec_norm(PNorm::Inf, h(xstar, x_l, t));
          if (r > res.max_residual) {
            res.max_residual = r;
            res.worst_agent = i;
            res.worst_layer = m;
            res.worst_delayed = delayed != 0;
            res.worst_time = t;
          }
        }
      }
    }
  }
  res.pass = res.max_residual <= 1e-12;
  return res;
}

double desired_solution_residual(const NetworkSystem& sys, std::span<const double> t_samples) {
  if (!sys.desired) throw ConfigError("no desired solution to check");
  const double h = 1e-5;
  double worst = 0.0;
  for (double t : t_samples) {
    const Vec fwd = sys.desired(t + h);
    const Vec bwd = sys.desired(t - h);
    const Vec ff = sys.feedforward ? sys.feedforward(t) : Vec(sys.n, 0.0);
    const Vec xstar = sys.desired(t);
    for (int i = 0; i < sys.N; ++i) {
      const auto xi = std::span<const double>(xstar).subspan(static_cast<std::size_t>(i) * sys.n, sys.n);
      Vec fx = sys.agents[i].f ? sys.agents[i].f(xi, t) : Vec(sys.n, 0.0);
      for (int k = 0; k < sys.n; ++k) {
        const std::size_t at = static_cast<std::size_t>(i) * sys.n + k;
        const double deriv = (fwd[at] - bwd[at]) / (2.0 * h);
        worst = std::max(worst, std::fabs(deriv - fx[k] - ff[k]));
      }
    }
  }
  return worst;
}

}  // namespace mplex
