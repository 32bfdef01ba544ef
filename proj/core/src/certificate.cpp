#include "mplex/certificate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace mplex {
namespace {

Matrix transform_block(double a1, double a2, int n, bool inverse) {
  Matrix t(3 * n, 3 * n);
  for (int k = 0; k < 3 * n; ++k) t(k, k) = 1.0;
  const double u = inverse ? -a1 : a1;
  const double v = inverse ? -a2 : a2;
  for (int k = 0; k < n; ++k) {
    t(k, n + k) = u;
    t(n + k, 2 * n + k) = v;
    if (inverse) t(k, 2 * n + k) = a1 * a2;
  }
  return t;
}

// Uniform double in [lo, hi) from raw 64-bit draws; bit-stable mapping.
double uniform_from_bits(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

std::vector<Vec> draw_samples(const SampleRegion& region) {
  const int dim = static_cast<int>(region.lo.size());
  if (dim == 0 || region.hi.size() != region.lo.size()) {
    throw DimensionError("sample region needs matching lo/hi bounds");
  }
  for (int k = 0; k < dim; ++k) {
    if (!(region.lo[k] <= region.hi[k]) || !std::isfinite(region.lo[k]) || !std::isfinite(region.hi[k])) {
      throw ConfigError("sample region bounds must be finite with lo <= hi");
    }
  }
  if (region.count < 1) throw ConfigError("sample region needs count >= 1");

  std::vector<Vec> samples;
  if (region.sampler == SampleRegion::Sampler::UniformRandom) {
    std::mt19937_64 rng(region.seed);
    samples.reserve(region.count);
    for (int s = 0; s < region.count; ++s) {
      Vec x(dim);
      for (int k = 0; k < dim; ++k) x[k] = uniform_from_bits(rng, region.lo[k], region.hi[k]);
      samples.push_back(std::move(x));
    }
    return samples;
  }

  // Grid sampler: per-axis lattice with floor(count^(1/dim)) >= 2 points.
  const int per_axis = std::max(2, static_cast<int>(std::floor(std::pow(
                                       static_cast<double>(region.count), 1.0 / dim))));
  double total = std::pow(static_cast<double>(per_axis), dim);
  if (total > 1e6) {
    throw ConfigError("grid sampler would need " + std::to_string(total) +
                      " points; use the random sampler for high-dimensional regions");
  }
  std::vector<int> idx(dim, 0);
  samples.reserve(static_cast<std::size_t>(total));
  while (true) {
    Vec x(dim);
    for (int k = 0; k < dim; ++k) {
      x[k] = region.lo[k] + (region.hi[k] - region.lo[k]) * idx[k] / (per_axis - 1);
    }
    samples.push_back(std::move(x));
    int k = 0;
    while (k < dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == dim) break;
  }
  return samples;
}

void require_transform(const NetworkSystem& sys, const TransformT& t) {
  if (t.agents() != sys.N || static_cast<int>(t.alpha2.size()) != sys.N) {
    throw DimensionError("transform must carry alpha pairs for all N agents");
  }
}

// C2 row expression for agent i at one assembled point.
double c2_row(const AugmentedJacobians& aj, int i, PNorm p, const std::vector<Matrix>& tblocks,
              const std::vector<Matrix>& tinv) {
  const int N = aj.abar.grid_size();
  double row = mat_measure(p, tblocks[i] * aj.abar.block(i, i) * tinv[i]);
  for (int j = 0; j < N; ++j) {
    if (j == i || aj.abar.is_zero_block(i, j)) continue;
    row += mat_norm(p, tblocks[i] * aj.abar.block(i, j) * tinv[j]);
  }
  return row;
}

double c3_row(const AugmentedJacobians& aj, int i, PNorm p, const std::vector<Matrix>& tblocks,
              const std::vector<Matrix>& tinv) {
  const int N = aj.bbar.grid_size();
  double row = 0.0;
  for (int j = 0; j < N; ++j) {
    if (aj.bbar.is_zero_block(i, j)) continue;
    row += mat_norm(p, tblocks[i] * aj.bbar.block(i, j) * tinv[j]);
  }
  return row;
}

std::vector<Matrix> all_blocks(const TransformT& t, int n, bool inverse) {
  std::vector<Matrix> out;
  out.reserve(t.agents());
  for (int i = 0; i < t.agents(); ++i) {
    out.push_back(inverse ? t.inverse_block(i, n) : t.block(i, n));
  }
  return out;
}

RowBound sampled_row_check(const NetworkSystem& sys, const TransformT& tr, const SampleRegion& region,
                           PNorm p, bool delayed_rows) {
  sys.validate();
  require_transform(sys, tr);
  const int nN = sys.n * sys.N;
  if (static_cast<int>(region.lo.size()) != nN) {
    throw DimensionError("sample region dimension must equal nN");
  }

  const std::vector<Matrix> tb = all_blocks(tr, sys.n, false);
  const std::vector<Matrix> ti = all_blocks(tr, sys.n, true);
  const std::vector<Vec> samples = draw_samples(region);

  RowBound best;
  best.value = -std::numeric_limits<double>::infinity();
  for (double t : region.t_samples) {
    const Vec x_l = sys.leader.x_l ? sys.leader.x_l(t) : Vec{};
    for (const Vec& x : samples) {
      const AugmentedJacobians aj = assemble_blocks(sys, x, x_l, t);
      for (int i = 0; i < sys.N; ++i) {
        const double row = delayed_rows ? c3_row(aj, i, p, tb, ti) : c2_row(aj, i, p, tb, ti);
        if (row > best.value) {
          best.value = row;
          best.worst_agent = i;
          best.worst_t = t;
          best.worst_state = x;
        }
      }
      ++best.samples;
    }
  }
  return best;
}

// Column-1 block family of the delayed couplings: rows (k_tau[m] * slope) I.
Matrix delayed_column_block(const TanhFamilyInfo& fam, double slope, int n) {
  Matrix b(3 * n, 3 * n);
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k < n; ++k) b(m * n + k, k) = fam.k_tau[m] * slope;
  }
  return b;
}

Matrix leader_diagonal_block(const TanhFamilyInfo& fam, int n) {
  Matrix a(3 * n, 3 * n);
  for (int k = 0; k < n; ++k) {
    a(k, n + k) = 1.0;
    a(n + k, 2 * n + k) = 1.0;
    for (int m = 0; m < 3; ++m) a(m * n + k, k) = -fam.k[m];
  }
  return a;
}

Vec default_c1_grid(const CertifyOptions& opt) {
  const int count = std::max(2, opt.c1_samples);
  Vec grid(count);
  for (int s = 0; s < count; ++s) {
    grid[s] = opt.c1_t0 + (opt.c1_horizon - opt.c1_t0) * s / (count - 1);
  }
  return grid;
}

}  // namespace

TransformT TransformT::identity(int agents) { return homogeneous(agents, 0.0, 0.0); }

TransformT TransformT::homogeneous(int agents, double a1, double a2) {
  if (agents < 1) throw ConfigError("transform needs at least one agent");
  TransformT t;
  t.alpha1.assign(agents, a1);
  t.alpha2.assign(agents, a2);
  return t;
}

bool TransformT::is_homogeneous() const {
  for (double v : alpha1)
    if (v != alpha1.front()) return false;
  for (double v : alpha2)
    if (v != alpha2.front()) return false;
  return !alpha1.empty();
}

Matrix TransformT::block(int i, int n) const { return transform_block(alpha1.at(i), alpha2.at(i), n, false); }

Matrix TransformT::inverse_block(int i, int n) const {
  return transform_block(alpha1.at(i), alpha2.at(i), n, true);
}

AugmentedJacobians assemble_blocks(const NetworkSystem& sys, std::span<const double> x,
                                   std::span<const double> x_l, double t) {
  sys.validate();
  const int n = sys.n;
  const int nN = n * sys.N;
  if (static_cast<int>(x.size()) != nN) throw DimensionError("assemble_blocks: x must have length nN");

  AugmentedJacobians out{BlockMatrix(std::vector<int>(sys.N, 3 * n)),
                         BlockMatrix(std::vector<int>(sys.N, 3 * n)),
                         Vec(x.begin(), x.end()), Vec(x_l.begin(), x_l.end()), t};

  auto coupling_jac = [&](const CouplingJacobianFn& fn, int j) -> Matrix {
    if (!fn) return Matrix(n, n);
    Matrix m = fn(x, x_l, t, j);
    if (m.rows() != n || m.cols() != n) throw DimensionError("coupling Jacobian must be n x n");
    return m;
  };

  for (int i = 0; i < sys.N; ++i) {
    const auto xi = x.subspan(static_cast<std::size_t>(i) * n, n);
    const CouplingSet& c = sys.couplings[i];

    Matrix diag(3 * n, 3 * n);
    Matrix f_jac = sys.agents[i].f_jacobian ? sys.agents[i].f_jacobian(xi, t) : Matrix(n, n);
    if (f_jac.rows() != n || f_jac.cols() != n) throw DimensionError("f_jacobian must be n x n");
    for (int m = 0; m < 3; ++m) {
      const Matrix hm = coupling_jac(c.delay_free_jacobian[m], i);
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          diag(m * n + r, s) = hm(r, s) + (m == 0 ? f_jac(r, s) : 0.0);
        }
      }
    }
    for (int k = 0; k < n; ++k) {
      diag(k, n + k) = 1.0;
      diag(n + k, 2 * n + k) = 1.0;
    }
    out.abar.set_block(i, i, std::move(diag));

    Matrix bdiag(3 * n, 3 * n);
    bool bdiag_nonzero = false;
    for (int m = 0; m < 3; ++m) {
      const Matrix hm = coupling_jac(c.delayed_jacobian[m], i);
      if (!hm.is_zero()) bdiag_nonzero = true;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) bdiag(m * n + r, s) = hm(r, s);
    }
    if (bdiag_nonzero) out.bbar.set_block(i, i, std::move(bdiag));

    for (int j : sys.neighbors[i]) {
      if (j == i) continue;
      Matrix off(3 * n, 3 * n);
      bool nonzero = false;
      for (int m = 0; m < 3; ++m) {
        const Matrix hm = coupling_jac(c.delay_free_jacobian[m], j);
        if (!hm.is_zero()) nonzero = true;
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) off(m * n + r, s) = hm(r, s);
      }
      if (nonzero) out.abar.set_block(i, j, std::move(off));

      Matrix boff(3 * n, 3 * n);
      nonzero = false;
      for (int m = 0; m < 3; ++m) {
        const Matrix hm = coupling_jac(c.delayed_jacobian[m], j);
        if (!hm.is_zero()) nonzero = true;
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) boff(m * n + r, s) = hm(r, s);
      }
      if (nonzero) out.bbar.set_block(i, j, std::move(boff));
    }
  }
  return out;
}

SampleRegion SampleRegion::box(int dim, double lo, double hi, int count, std::uint64_t seed) {
  SampleRegion r;
  r.lo.assign(dim, lo);
  r.hi.assign(dim, hi);
  r.count = count;
  r.seed = seed;
  return r;
}

RowBound check_c2(const NetworkSystem& sys, const TransformT& t, const SampleRegion& region, PNorm p) {
  return sampled_row_check(sys, t, region, p, false);
}

RowBound check_c3(const NetworkSystem& sys, const TransformT& t, const SampleRegion& region, PNorm p) {
  return sampled_row_check(sys, t, region, p, true);
}

WorstCaseBounds tanh_worstcase_bounds(const NetworkSystem& sys, const TransformT& tr, PNorm p) {
  sys.validate();
  require_transform(sys, tr);
  if (!sys.tanh_family) {
    throw NotApplicableError("analytic worst-case bounds need a declared diffusive-tanh family");
  }
  const TanhFamilyInfo& fam = *sys.tanh_family;
  const int n = sys.n;
  const Matrix a0 = leader_diagonal_block(fam, n);
  // Worst slope of the tanh couplings: 0 < psi' <= k_psi. Every agent is
  // bounded by the declared neighbour cap, keeping the certificate
  // independent of the realized topology (and hence of N).
  const int nbar = fam.max_neighbors;
  const Matrix unit_nbr = delayed_column_block(fam, fam.k_psi, n);

  WorstCaseBounds out;
  double worst_c2 = -std::numeric_limits<double>::infinity();
  double worst_c3 = -std::numeric_limits<double>::infinity();
  const bool homogeneous = tr.is_homogeneous();
  for (int i = 0; i < sys.N; ++i) {
    const Matrix ti = tr.block(i, n);
    const Matrix tii = tr.inverse_block(i, n);
    const double c2 = mat_measure(p, ti * a0 * tii);
    if (c2 > worst_c2) {
      worst_c2 = c2;
      out.worst_agent_c2 = i;
    }
    // self block: slope sum up to nbar * k_psi; neighbour blocks: nbar at k_psi.
    double nbr_norm;
    if (homogeneous) {
      nbr_norm = mat_norm(p, ti * unit_nbr * tii);
    } else {
      nbr_norm = 0.0;
      for (int j = 0; j < sys.N; ++j) {
        if (j == i) continue;
        nbr_norm = std::max(nbr_norm, mat_norm(p, ti * unit_nbr * tr.inverse_block(j, n)));
      }
    }
    const double c3 = nbar * mat_norm(p, ti * unit_nbr * tii) + nbar * nbr_norm;
    if (c3 > worst_c3) {
      worst_c3 = c3;
      out.worst_agent_c3 = i;
    }
    if (homogeneous && i == 0) {
      // identical rows for every agent
      out.worst_agent_c2 = 0;
      out.worst_agent_c3 = 0;
      break;
    }
  }
  out.sigma_bar = -worst_c2;
  out.sigma_underbar = worst_c3;
  return out;
}

CertificateReport certify(const NetworkSystem& sys, const TransformT& tr, const CertifyOptions& opt,
                          double tau_max) {
  sys.validate();
  require_transform(sys, tr);
  if (tau_max < 0.0) throw ConfigError("certify: tau_max must be nonnegative");

  CertificateReport report;
  report.p = opt.p;
  report.tau_max = tau_max;
  report.alpha1 = tr.alpha1.front();
  report.alpha2 = tr.alpha2.front();

  const Vec c1_grid = default_c1_grid(opt);
  const C1Result c1 = check_c1(sys, c1_grid);
  report.c1_pass = c1.pass;
  report.c1_residual = c1.max_residual;

  if (opt.region) {
    report.route = "sampled";
    const RowBound c2 = check_c2(sys, tr, *opt.region, opt.p);
    const RowBound c3 = check_c3(sys, tr, *opt.region, opt.p);
    report.sigma_bar = -c2.value;
    report.sigma_underbar = c3.value;
    report.worst_agent_c2 = c2.worst_agent;
    report.worst_agent_c3 = c3.worst_agent;
    report.sample_count = c2.samples;
    if (!(report.sigma_underbar < report.sigma_bar)) {
      report.violations.push_back({c2.worst_state, c2.worst_t, c2.value + c3.value});
    }
  } else {
    report.route = "analytic";
    const WorstCaseBounds wb = tanh_worstcase_bounds(sys, tr, opt.p);
    report.sigma_bar = wb.sigma_bar;
    report.sigma_underbar = wb.sigma_underbar;
    report.worst_agent_c2 = wb.worst_agent_c2;
    report.worst_agent_c3 = wb.worst_agent_c3;
    if (!(report.sigma_underbar < report.sigma_bar)) {
      report.violations.push_back({Vec{}, 0.0, report.sigma_underbar - report.sigma_bar});
    }
  }

  report.feasible = report.c1_pass && report.sigma_underbar >= 0.0 &&
                    report.sigma_underbar < report.sigma_bar;
  if (report.feasible) {
    report.lambda_hat = halanay_rate(-report.sigma_bar, report.sigma_underbar, tau_max);
  }

  std::vector<Matrix> tblocks, tinvblocks;
  tblocks.reserve(sys.N);
  tinvblocks.reserve(sys.N);
  for (int i = 0; i < sys.N; ++i) {
    tblocks.push_back(tr.block(i, sys.n));
    tinvblocks.push_back(tr.inverse_block(i, sys.n));
  }
  report.kappa = block_norm_bound(BlockMatrix::block_diagonal(tblocks), opt.p) *
                 block_norm_bound(BlockMatrix::block_diagonal(tinvblocks), opt.p);
  return report;
}

double deviation_bound(const CertificateReport& report, double init_dev, double init_mplx, double w_sup,
                 double elapsed) {
  if (!report.feasible || !report.lambda_hat) {
    throw InfeasibleError("deviation_bound needs a feasible certificate");
  }
  if (init_dev < 0.0 || init_mplx < 0.0 || w_sup < 0.0 || elapsed < 0.0) {
    throw ConfigError("deviation_bound: arguments must be nonnegative");
  }
  const double gap = report.sigma_bar - report.sigma_underbar;
  return report.kappa * std::exp(-*report.lambda_hat * elapsed) * (init_dev + init_mplx) +
         report.kappa / gap * w_sup;
}

TransformT select_alpha(const NetworkSystem& sys, PNorm p, const std::optional<SampleRegion>& region) {
  sys.validate();
  const bool analytic = sys.tanh_family.has_value();
  if (!analytic && !region) {
    throw ConfigError("select_alpha needs either a declared coupling family or a sample region");
  }

  double best_gap = -std::numeric_limits<double>::infinity();
  double best_a1 = 0.0, best_a2 = 0.0;
  for (int i1 = 0; i1 <= 40; ++i1) {
    const double a1 = -2.0 + 0.1 * i1;
    for (int i2 = 0; i2 <= 40; ++i2) {
      const double a2 = -2.0 + 0.1 * i2;
      const TransformT tr = TransformT::homogeneous(sys.N, a1, a2);
      double gap;
      if (analytic) {
        const WorstCaseBounds wb = tanh_worstcase_bounds(sys, tr, p);
        gap = wb.sigma_bar - wb.sigma_underbar;
      } else {
        const RowBound c2 = check_c2(sys, tr, *region, p);
        const RowBound c3 = check_c3(sys, tr, *region, p);
        gap = -c2.value - c3.value;
      }
      if (gap > best_gap) {
        best_gap = gap;
        best_a1 = a1;
        best_a2 = a2;
      }
    }
  }
  return TransformT::homogeneous(sys.N, best_a1, best_a2);
}

}  // namespace mplex
