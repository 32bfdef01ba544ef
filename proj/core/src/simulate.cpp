#include "mplex/simulate.hpp"

#include <cmath>
#include <string>

#include "mplex/errors.hpp"

namespace mplex {

HistoryBuffer::HistoryBuffer(double t0, double dt, int dim, StateFn pre_history)
    : t0_(t0), dt_(dt), dim_(dim), pre_(std::move(pre_history)) {
  if (dt <= 0.0) throw ConfigError("history buffer needs dt > 0");
  if (dim <= 0) throw DimensionError("history buffer needs dim > 0");
}

void HistoryBuffer::reserve(std::size_t samples) {
  states_.reserve(samples * dim_);
  derivs_.reserve(samples * dim_);
}

void HistoryBuffer::push(const Vec& state, const Vec& derivative) {
  if (static_cast<int>(state.size()) != dim_ || static_cast<int>(derivative.size()) != dim_) {
    throw DimensionError("history push: wrong dimension");
  }
  states_.insert(states_.end(), state.begin(), state.end());
  derivs_.insert(derivs_.end(), derivative.begin(), derivative.end());
  ++count_;
}

std::span<const double> HistoryBuffer::sample(int k) const {
  return {states_.data() + static_cast<std::size_t>(k) * dim_, static_cast<std::size_t>(dim_)};
}

std::span<const double> HistoryBuffer::derivative(int k) const {
  return {derivs_.data() + static_cast<std::size_t>(k) * dim_, static_cast<std::size_t>(dim_)};
}

Vec HistoryBuffer::lookup(double s) const {
  if (s <= t0_) {
    if (!pre_) {
      if (s == t0_ && count_ > 0) {
        const auto sp = sample(0);
        return Vec(sp.begin(), sp.end());
      }
      throw LookupError("history lookup before t0 without a pre-horizon function");
    }
    Vec v = pre_(s);
    if (static_cast<int>(v.size()) != dim_) throw DimensionError("pre-horizon function: wrong dimension");
    return v;
  }
  if (count_ == 0) throw LookupError("history lookup on an empty buffer");

  const double slack = 1e-9 * dt_;
  const double latest = latest_time();
  if (s > latest + slack) {
    throw LookupError("history lookup at t = " + std::to_string(s) + " beyond stored time " +
                      std::to_string(latest));
  }
  double pos = (s - t0_) / dt_;
  if (pos > count_ - 1) pos = count_ - 1;

  const double rounded = std::round(pos);
  if (std::fabs(pos - rounded) * dt_ <= slack && rounded >= 0 && rounded <= count_ - 1) {
    const auto sp = sample(static_cast<int>(rounded));
    return Vec(sp.begin(), sp.end());
  }

  const int k0 = static_cast<int>(pos);  // floor for pos >= 0
  const int k1 = k0 + 1;
  const double theta = pos - k0;
  const double h00 = (1.0 + 2.0 * theta) * (1.0 - theta) * (1.0 - theta);
  const double h10 = theta * (1.0 - theta) * (1.0 - theta);
  const double h01 = theta * theta * (3.0 - 2.0 * theta);
  const double h11 = theta * theta * (theta - 1.0);

  const auto y0 = sample(k0);
  const auto y1 = sample(k1);
  const auto f0 = derivative(k0);
  const auto f1 = derivative(k1);
  Vec out(dim_);
  for (int k = 0; k < dim_; ++k) {
    out[k] = h00 * y0[k] + h01 * y1[k] + dt_ * (h10 * f0[k] + h11 * f1[k]);
  }
  return out;
}

Vec history_lookup(const HistoryBuffer& buf, double s) { return buf.lookup(s); }

namespace {

void check_finite(const Vec& z, long step, double t) {
  for (double v : z) {
    if (!std::isfinite(v)) {
      throw DivergenceError("state diverged (non-finite value) at step " + std::to_string(step) +
                            ", t = " + std::to_string(t));
    }
  }
}

}  // namespace

std::vector<TraceRecord> integrate(const NetworkSystem& sys, const IntegrateOptions& opt) {
  sys.validate();
  if (opt.dt <= 0.0) throw ConfigError("integrate: dt must be positive");
  if (opt.t_end <= opt.t0) throw ConfigError("integrate: t_end must exceed t0");
  if (opt.record_every < 1) throw ConfigError("integrate: record_every must be >= 1");
  if (!sys.history) throw ConfigError("integrate: the system has no initial history");

  const int dim = sys.stacked_dim();
  const int nN = sys.n * sys.N;
  const double dt = opt.dt;
  const long steps = std::lround((opt.t_end - opt.t0) / dt);
  if (steps < 1) throw ConfigError("integrate: horizon shorter than one step");

  const bool use_history = sys.has_delayed_couplings() && sys.delay.tau_max > 0.0;

  auto grid_time = [&](long k) { return opt.t0 + dt * k; };

  HistoryBuffer buf(opt.t0, dt, dim, sys.history);
  if (use_history) buf.reserve(static_cast<std::size_t>(steps) + 1);

  Vec z = sys.history(opt.t0);
  if (static_cast<int>(z.size()) != dim) throw DimensionError("history must produce 3nN states");

  // Without history storage the current stage state doubles as the delayed
  // argument (covers both "no delayed couplings" and the tau = 0 limit).
  auto rhs = [&](double theta, const Vec& state) {
    if (!use_history) return closed_loop_rhs(sys, state, state, theta);
    const Vec zd = buf.lookup(theta - sys.delay.eval(theta));
    return closed_loop_rhs(sys, state, zd, theta);
  };

  std::vector<TraceRecord> records;
  records.reserve(static_cast<std::size_t>(steps / opt.record_every) + 2);

  auto record = [&](double t, const Vec& state) {
    TraceRecord rec;
    rec.t = t;
    rec.x.assign(state.begin(), state.begin() + nN);
    rec.r1.assign(state.begin() + nN, state.begin() + 2 * nN);
    rec.r2.assign(state.begin() + 2 * nN, state.end());
    rec.deviation.resize(sys.N);
    Vec xstar;
    if (sys.desired) xstar = sys.desired(t);
    for (int i = 0; i < sys.N; ++i) {
      Vec e(sys.n);
      for (int k = 0; k < sys.n; ++k) {
        const std::size_t at = static_cast<std::size_t>(i) * sys.n + k;
        e[k] = rec.x[at] - (xstar.empty() ? 0.0 : xstar[at]);
      }
      rec.deviation[i] = vec_norm(opt.deviation_norm, e);
    }
    records.push_back(std::move(rec));
  };

  Vec f_now = rhs(opt.t0, z);
  if (use_history) buf.push(z, f_now);
  record(opt.t0, z);

  Vec stage(dim), k2(dim), k3(dim), k4(dim);
  for (long step = 0; step < steps; ++step) {
    const double t = grid_time(step);
    if (use_history) {
      const double tau_here = sys.delay.eval(t);
      if (dt > tau_here) {
        throw ConfigError("integrate: dt = " + std::to_string(dt) + " exceeds the delay tau(t) = " +
                          std::to_string(tau_here) + " at t = " + std::to_string(t) +
                          "; dt <= tau is required when delayed couplings are active");
      }
    }

    const Vec& k1 = f_now;  // derivative at (t, z), stored with the last sample
    for (int k = 0; k < dim; ++k) stage[k] = z[k] + 0.5 * dt * k1[k];
    k2 = rhs(t + 0.5 * dt, stage);
    for (int k = 0; k < dim; ++k) stage[k] = z[k] + 0.5 * dt * k2[k];
    k3 = rhs(t + 0.5 * dt, stage);
    for (int k = 0; k < dim; ++k) stage[k] = z[k] + dt * k3[k];
    k4 = rhs(t + dt, stage);

    for (int k = 0; k < dim; ++k) {
      z[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    const double t_next = grid_time(step + 1);
    check_finite(z, step + 1, t_next);

    f_now = rhs(t_next, z);
    if (use_history) buf.push(z, f_now);

    if ((step + 1) % opt.record_every == 0 || step + 1 == steps) record(t_next, z);
  }
  return records;
}

}  // namespace mplex
