#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mplex/halanay.hpp"
#include "mplex/network.hpp"
#include "mplex/norms.hpp"

namespace mplex {

/// Block-diagonal state transformation diag{T_1, ..., T_N} with
///   T_i = [[I, a_{i,1} I, 0], [0, I, a_{i,2} I], [0, 0, I]].
/// Unit upper-triangular, hence invertible for any alpha; the inverse is
/// available in closed form.
struct TransformT {
  Vec alpha1;  // per agent
  Vec alpha2;

  static TransformT identity(int agents);
  static TransformT homogeneous(int agents, double a1, double a2);

  int agents() const { return static_cast<int>(alpha1.size()); }
  bool is_homogeneous() const;

  Matrix block(int i, int n) const;          // T_i as a 3n x 3n matrix
  Matrix inverse_block(int i, int n) const;  // closed-form T_i^{-1}
};

/// Augmented block Jacobians of the closed loop at one evaluation point.
/// Block (i, i) of abar:
///   [[df_i/dx_i + dh_{i,0}/dx_i, I, 0],
///    [dh_{i,1}/dx_i,             0, I],
///    [dh_{i,2}/dx_i,             0, 0]]
/// off-diagonal blocks of abar and all blocks of bbar carry the coupling
/// Jacobian (delay-free / delayed) in block-column 1 and zeros elsewhere.
struct AugmentedJacobians {
  BlockMatrix abar;
  BlockMatrix bbar;
  Vec x;
  Vec x_l;
  double t = 0.0;
};

AugmentedJacobians assemble_blocks(const NetworkSystem& sys, std::span<const double> x,
                                   std::span<const double> x_l, double t);

/// Box of network states used by the sampled C2/C3 checks. Sampling is a
/// falsifier, not a proof; leader states are taken from the scenario's
/// leader signal at each time sample.
struct SampleRegion {
  enum class Sampler { Grid, UniformRandom };

  Vec lo;  // per state coordinate, size nN
  Vec hi;
  Sampler sampler = Sampler::UniformRandom;
  int count = 100;
  std::uint64_t seed = 0;
  Vec t_samples = {0.0};

  static SampleRegion box(int dim, double lo, double hi, int count, std::uint64_t seed);
};

/// Result of one sampled row check. For C2, `value` is the largest row
/// expression mu_p(T_i Abar_ii T_i^-1) + sum_{j != i} ||T_i Abar_ij T_j^-1||_p
/// (so sigma_bar = -value); for C3 it is the largest delayed row sum
/// (sigma_underbar = value).
struct RowBound {
  double value = 0.0;
  int worst_agent = -1;
  double worst_t = 0.0;
  Vec worst_state;
  long samples = 0;
};

RowBound check_c2(const NetworkSystem& sys, const TransformT& t, const SampleRegion& region, PNorm p);
RowBound check_c3(const NetworkSystem& sys, const TransformT& t, const SampleRegion& region, PNorm p);

/// Sound state-independent bounds for the declared diffusive-tanh family:
/// delayed Jacobian slopes lie in (0, k_psi] and the row expressions are
/// monotone in the slope magnitudes, so evaluating at the extreme slope
/// and the declared neighbour cap certifies all states and topologies the
/// family admits. Throws NotApplicableError when the system declares no
/// family.
struct WorstCaseBounds {
  double sigma_bar = 0.0;
  double sigma_underbar = 0.0;
  int worst_agent_c2 = -1;
  int worst_agent_c3 = -1;
};

WorstCaseBounds tanh_worstcase_bounds(const NetworkSystem& sys, const TransformT& t, PNorm p);

struct Violation {
  Vec x;
  double t = 0.0;
  double margin = 0.0;  // C2 row value + C3 row value; >= 0 means no contraction margin
};

struct CertificateReport {
  std::string route;  // "analytic" or "sampled"
  PNorm p = PNorm::Two;
  double tau_max = 0.0;

  bool c1_pass = false;
  double c1_residual = 0.0;

  double sigma_bar = 0.0;
  double sigma_underbar = 0.0;
  bool feasible = false;
  std::optional<double> lambda_hat;
  double kappa = 1.0;

  int worst_agent_c2 = -1;
  int worst_agent_c3 = -1;
  long sample_count = 0;
  std::vector<Violation> violations;

  double alpha1 = 0.0;  // homogeneous transform parameters used
  double alpha2 = 0.0;
};

struct CertifyOptions {
  PNorm p = PNorm::Two;
  std::optional<SampleRegion> region;  // set => sampled route, unset => analytic route
  double c1_t0 = 0.0;
  double c1_horizon = 60.0;
  int c1_samples = 100;
};

/// Runs C1 over the time grid, C2/C3 via the requested route, solves the
/// rate equation lambda + (-sigma_bar) + sigma_underbar e^{lambda tau} = 0
/// and computes kappa = ||T||_G ||T^-1||_G via the block-diagonal norm
/// bound. feasible requires C1 to pass and sigma_underbar < sigma_bar.
CertificateReport certify(const NetworkSystem& sys, const TransformT& t, const CertifyOptions& opt,
                          double tau_max);

/// Deviation bound at `elapsed` seconds after t0:
///   kappa e^{-lambda elapsed} (init_dev + init_mplx)
///   + kappa / (sigma_bar - sigma_underbar) * w_sup.
/// init_dev is the sup of max_i |x_i - x*_i|_p over the initial window;
/// init_mplx the sup of max_i (|r_{i,1}(s) + d0_i + d1_i s|_p + |r_{i,2}(s) + d1_i|_p).
double deviation_bound(const CertificateReport& report, double init_dev, double init_mplx, double w_sup,
                 double elapsed);

/// Deterministic grid search for homogeneous (alpha1, alpha2) in [-2, 2]^2
/// (41 x 41) maximizing sigma_bar - sigma_underbar. Uses the analytic
/// family route when available, otherwise the sampled route over `region`.
TransformT select_alpha(const NetworkSystem& sys, PNorm p,
                        const std::optional<SampleRegion>& region = {});

}  // namespace mplex
