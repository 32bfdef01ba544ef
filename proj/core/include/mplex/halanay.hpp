#pragma once

#include "mplex/errors.hpp"

namespace mplex {

/// Coefficients of the delayed scalar comparison inequality
///   D+ u(t) <= a u(t) + b sup_{t - tau(t) <= s <= t} u(s) + c.
struct HalanayParams {
  double a;        // self term, < 0
  double b;        // delayed term, >= 0
  double c;        // constant forcing, >= 0
  double tau_max;  // delay bound [s]
  double sigma;    // decay margin: a + b <= -sigma < 0

  /// sigma defaults to -(a + b), the largest admissible margin.
  HalanayParams(double a, double b, double c, double tau_max);
  HalanayParams(double a, double b, double c, double tau_max, double sigma);
};

/// The unique positive root of lambda + a + b e^{lambda tau} = 0, the
/// exponential decay rate of the comparison system. Evaluated at the
/// worst-case constant delay tau (the root is decreasing in tau, so
/// passing tau_max gives a sound rate for any 0 <= tau(t) <= tau_max).
/// Bisection on [0, -(a+b)] to relative tolerance 1e-12.
/// Throws InfeasibleError when a + b >= 0.
double halanay_rate(double a, double b, double tau);

/// Decay envelope u0_sup * e^{-rate * elapsed} + c / sigma, with the rate
/// from halanay_rate(a, b, tau_max).
double halanay_bound(const HalanayParams& params, double u0_sup, double elapsed);

}  // namespace mplex
