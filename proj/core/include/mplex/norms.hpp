#pragma once

#include <span>

#include "mplex/matrix.hpp"

namespace mplex {

/// Selector for |.|_p with p in {1, 2, inf}.
enum class PNorm { One, Two, Inf };

/// Composite norm: inner p-norm per block, max across blocks.
/// The outer norm is fixed to the (monotone) max norm.
struct GNorm {
  PNorm inner = PNorm::Two;
};

double vec_norm(PNorm p, std::span<const double> v);

/// Induced matrix norm. p = Two uses the largest singular value computed
/// from the symmetric eigenproblem on A^T A.
double mat_norm(PNorm p, const Matrix& a);

/// Matrix measure (logarithmic norm) mu_p(A); may be negative.
///   p = 1:   max_j ( a_jj + sum_{i != j} |a_ij| )
///   p = inf: max_i ( a_ii + sum_{j != i} |a_ij| )
///   p = 2:   lambda_max( (A + A^T) / 2 )
double mat_measure(PNorm p, const Matrix& a);

/// Max over blocks of the inner p-norm of each block of v.
double g_norm(GNorm g, std::span<const int> dims, std::span<const double> v);

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
/// rotations (tolerance 1e-12 of the Frobenius norm, cap 100 sweeps).
Vec symmetric_eigenvalues(Matrix a);

/// max_i { mu_p(A_ii) + sum_{j != i} ||A_ij||_p }.
/// Upper-bounds the measure mu_G(A) of the flattened matrix in the
/// composite norm with inner p-norms and outer max norm.
double block_measure_bound(const BlockMatrix& a, PNorm inner);

/// max_i sum_j ||A_ij||_p. Upper-bounds ||A||_G; exact for
/// block-diagonal matrices (max_i ||A_ii||_p).
double block_norm_bound(const BlockMatrix& a, PNorm inner);

}  // namespace mplex
