#pragma once

#include <optional>

#include "mplex/network.hpp"
#include "mplex/norms.hpp"

namespace mplex {

/// Uniformly spaced past states with stored derivatives. Lookups between
/// samples use cubic Hermite interpolation (exact on cubics); times at or
/// before t0 fall back to the pre-horizon function verbatim.
class HistoryBuffer {
 public:
  HistoryBuffer(double t0, double dt, int dim, StateFn pre_history);

  /// Appends the sample at t0 + sample_count() * dt.
  void push(const Vec& state, const Vec& derivative);
  void reserve(std::size_t samples);

  Vec lookup(double s) const;

  double t0() const { return t0_; }
  double dt() const { return dt_; }
  int dim() const { return dim_; }
  int sample_count() const { return count_; }
  double latest_time() const { return t0_ + dt_ * (count_ - 1); }

  std::span<const double> sample(int k) const;
  std::span<const double> derivative(int k) const;

 private:
  double t0_;
  double dt_;
  int dim_;
  StateFn pre_;
  int count_ = 0;
  std::vector<double> states_;
  std::vector<double> derivs_;
};

Vec history_lookup(const HistoryBuffer& buf, double s);

/// One recorded simulation step.
struct TraceRecord {
  double t = 0.0;
  Vec x;          // nN
  Vec r1;         // nN
  Vec r2;         // nN
  Vec deviation;  // per agent: |x_i - x*_i|_p (|x_i|_p when no desired solution)
  std::optional<double> bound;  // deviation bound, filled by scenarios with a certificate
};

struct IntegrateOptions {
  double t0 = 0.0;
  double t_end = 0.0;
  double dt = 1e-3;
  int record_every = 1;
  PNorm deviation_norm = PNorm::Two;
};

/// Fixed-step classical RK4 over the closed loop; delayed arguments use
/// cubic Hermite interpolation of the full-resolution history buffer
/// (method of steps). Requires dt <= tau(t) whenever delayed couplings
/// are present so lookups stay inside already-computed history; delay-free
/// systems (and tau_max = 0) skip history storage entirely. Deterministic:
/// identical inputs give bit-identical traces. t_end is rounded to the
/// nearest whole number of steps.
std::vector<TraceRecord> integrate(const NetworkSystem& sys, const IntegrateOptions& opt);

}  // namespace mplex
