#pragma once

// Shared helpers for the test suites: seeded generators and the
// independent estimates (finite differences, random directions) the
// norm/measure tests check against.

#include <random>

#include "mplex/matrix.hpp"
#include "mplex/norms.hpp"

namespace mplex::test {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline Vec random_vec(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  Vec v(n);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double lo = -1.0,
                            double hi = 1.0) {
  return Matrix(rows, cols, random_vec(rng, rows * cols, lo, hi));
}

// Finite-difference estimate of the matrix measure from its definition,
// (||I + hA||_p - 1) / h.
inline double fd_measure(PNorm p, const Matrix& a, double h) {
  Matrix m = Matrix::identity(a.rows());
  m += a * h;
  return (mat_norm(p, m) - 1.0) / h;
}

// Lower-bound estimate of the induced norm by random directions.
inline double random_direction_norm(PNorm p, const Matrix& a, int samples, std::mt19937_64& rng) {
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec x = random_vec(rng, a.cols());
    const double nx = vec_norm(p, x);
    if (nx == 0.0) continue;
    best = std::max(best, vec_norm(p, a.apply(x)) / nx);
  }
  return best;
}

// Same estimate in the composite G-norm (inner p per block, outer max).
inline double random_direction_g_norm(GNorm g, const std::vector<int>& dims, const Matrix& a,
                                      int samples, std::mt19937_64& rng) {
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec x = random_vec(rng, a.cols());
    const double nx = g_norm(g, dims, x);
    if (nx == 0.0) continue;
    best = std::max(best, g_norm(g, dims, a.apply(x)) / nx);
  }
  return best;
}

// Finite-difference estimate of mu_G on the flattened matrix.
inline double fd_g_measure(GNorm g, const std::vector<int>& dims, const Matrix& flat, double h,
                           int samples, std::mt19937_64& rng) {
  Matrix m = Matrix::identity(flat.rows());
  m += flat * h;
  return (random_direction_g_norm(g, dims, m, samples, rng) - 1.0) / h;
}

inline BlockMatrix random_block_matrix(std::mt19937_64& rng, int grid, int block, double lo = -1.0,
                                       double hi = 1.0) {
  BlockMatrix a(std::vector<int>(grid, block));
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) a.set_block(i, j, random_matrix(rng, block, block, lo, hi));
  return a;
}

}  // namespace mplex::test
