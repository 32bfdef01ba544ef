#include "mplex/halanay.hpp"

#include <cmath>
#include <string>

namespace mplex {
namespace {

void validate(const HalanayParams& p) {
  if (!(std::isfinite(p.a) && std::isfinite(p.b) && std::isfinite(p.c) &&
        std::isfinite(p.tau_max) && std::isfinite(p.sigma))) {
    throw ConfigError("halanay parameters must be finite");
  }
  if (p.a >= 0.0) throw ConfigError("halanay: a must be negative");
  if (p.b < 0.0) throw ConfigError("halanay: b must be nonnegative");
  if (p.c < 0.0) throw ConfigError("halanay: c must be nonnegative");
  if (p.tau_max < 0.0) throw ConfigError("halanay: tau_max must be nonnegative");
  if (p.sigma <= 0.0) throw ConfigError("halanay: sigma must be positive");
  if (p.a + p.b > -p.sigma) throw ConfigError("halanay: a + b <= -sigma is required");
}

}  // namespace

HalanayParams::HalanayParams(double a_, double b_, double c_, double tau_max_)
    : HalanayParams(a_, b_, c_, tau_max_, -(a_ + b_)) {}

HalanayParams::HalanayParams(double a_, double b_, double c_, double tau_max_, double sigma_)
    : a(a_), b(b_), c(c_), tau_max(tau_max_), sigma(sigma_) {
  validate(*this);
}

double halanay_rate(double a, double b, double tau) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(tau))) {
    throw ConfigError("halanay_rate: arguments must be finite");
  }
  if (b < 0.0) throw ConfigError("halanay_rate: b must be nonnegative");
  if (tau < 0.0) throw ConfigError("halanay_rate: tau must be nonnegative");
  if (a + b >= 0.0) {
    throw InfeasibleError("halanay_rate requires a + b < 0, got a + b = " + std::to_string(a + b));
  }

  const double hi0 = -(a + b);
  auto residual = [&](double lam) { return lam + a + b * std::exp(lam * tau); };

  // residual(0) = a + b < 0; residual(hi0) = b (e^{hi0 tau} - 1) >= 0,
  // with equality exactly when b = 0 or tau = 0.
  if (residual(hi0) == 0.0) return hi0;

  double lo = 0.0;
  double hi = hi0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double halanay_bound(const HalanayParams& params, double u0_sup, double elapsed) {
  if (u0_sup < 0.0) throw ConfigError("halanay_bound: u0_sup must be nonnegative");
  if (elapsed < 0.0) throw ConfigError("halanay_bound: elapsed time must be nonnegative");
  const double rate = halanay_rate(params.a, params.b, params.tau_max);
  return u0_sup * std::exp(-rate * elapsed) + params.c / params.sigma;
}

}  // namespace mplex
