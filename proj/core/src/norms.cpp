#include "mplex/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mplex {
namespace {

constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double max_col_abs_sum(const Matrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::fabs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_row_abs_sum(const Matrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += std::fabs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(what) + " requires a square matrix");
}

}  // namespace

double vec_norm(PNorm p, std::span<const double> v) {
  switch (p) {
    case PNorm::One: {
      double s = 0.0;
      for (double x : v) s += std::fabs(x);
      return s;
    }
    case PNorm::Two: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case PNorm::Inf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::fabs(x));
      return m;
    }
  }
  return 0.0;
}

Vec symmetric_eigenvalues(Matrix a) {
  require_square(a, "symmetric eigensolve");
  const int n = a.rows();
  const double scale = frobenius(a);
  if (scale == 0.0) return Vec(n, 0.0);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiTol * scale) {
      Vec eig(n);
      for (int i = 0; i < n; ++i) eig[i] = a(i, i);
      std::sort(eig.begin(), eig.end());
      return eig;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // A <- J^T A J with the rotation in the (p, q) plane
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw ConvergenceError("Jacobi eigensolve did not converge within 100 sweeps");
}

double mat_norm(PNorm p, const Matrix& a) {
  if (a.empty()) throw DimensionError("mat_norm of an empty matrix");
  switch (p) {
    case PNorm::One:
      return max_col_abs_sum(a);
    case PNorm::Inf:
      return max_row_abs_sum(a);
    case PNorm::Two: {
      const Matrix gram = a.transposed() * a;
      const Vec eig = symmetric_eigenvalues(gram);
      return std::sqrt(std::max(eig.back(), 0.0));
    }
  }
  return 0.0;
}

double mat_measure(PNorm p, const Matrix& a) {
  require_square(a, "mat_measure");
  const int n = a.rows();
  switch (p) {
    case PNorm::One: {
      double best = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        double s = a(j, j);
        for (int i = 0; i < n; ++i)
          if (i != j) s += std::fabs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case PNorm::Inf: {
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        double s = a(i, i);
        for (int j = 0; j < n; ++j)
          if (j != i) s += std::fabs(a(i, j));
        best = std::max(best, s);
      }
      return best;
    }
    case PNorm::Two: {
      Matrix sym = (a + a.transposed()) * 0.5;
      return symmetric_eigenvalues(sym).back();
    }
  }
  return 0.0;
}

double g_norm(GNorm g, std::span<const int> dims, std::span<const double> v) {
  std::size_t expected = 0;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("g_norm: block sizes must be positive");
    expected += static_cast<std::size_t>(d);
  }
  if (expected != v.size()) {
    throw DimensionError("g_norm: vector length " + std::to_string(v.size()) +
                         " does not match block sizes (total " + std::to_string(expected) + ")");
  }
  double best = 0.0;
  std::size_t at = 0;
  for (int d : dims) {
    best = std::max(best, vec_norm(g.inner, v.subspan(at, d)));
    at += static_cast<std::size_t>(d);
  }
  return best;
}

double block_measure_bound(const BlockMatrix& a, PNorm inner) {
  const int n = a.grid_size();
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double row = mat_measure(inner, a.block(i, i));
    for (int j = 0; j < n; ++j) {
      if (j == i || a.is_zero_block(i, j)) continue;
      row += mat_norm(inner, a.block(i, j));
    }
    best = std::max(best, row);
  }
  return best;
}

double block_norm_bound(const BlockMatrix& a, PNorm inner) {
  const int n = a.grid_size();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (a.is_zero_block(i, j)) continue;
      row += mat_norm(inner, a.block(i, j));
    }
    best = std::max(best, row);
  }
  return best;
}

}  // namespace mplex
