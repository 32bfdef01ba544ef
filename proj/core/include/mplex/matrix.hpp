#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "mplex/errors.hpp"

namespace mplex {

using Vec = std::vector<double>;

/// Dense real matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;

  /// Zero matrix of the given shape.
  Matrix(int rows, int cols);

  /// Construct from row-major entries; rejects NaN/Inf.
  Matrix(int rows, int cols, std::initializer_list<double> entries);
  Matrix(int rows, int cols, Vec entries);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<const double> data() const { return data_; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);
  Matrix operator*(const Matrix& rhs) const;

  friend Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
  friend Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
  friend Matrix operator*(Matrix a, double s) { a *= s; return a; }
  friend Matrix operator*(double s, Matrix a) { a *= s; return a; }

  Matrix transposed() const;
  bool is_zero() const;

  /// y = A x
  Vec apply(std::span<const double> x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vec data_;
};

/// N x N grid of dense blocks; block (i, j) has shape
/// (block_dims[i], block_dims[j]). Blocks never assigned stay canonical
/// zeros and is_zero_block() reports them in O(1).
class BlockMatrix {
 public:
  explicit BlockMatrix(std::vector<int> block_dims);

  int grid_size() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& block_dims() const { return dims_; }
  int total_dim() const { return total_; }

  void set_block(int i, int j, Matrix m);
  const Matrix& block(int i, int j) const;
  bool is_zero_block(int i, int j) const;

  /// Assemble the full total_dim x total_dim matrix.
  Matrix flatten() const;

  static BlockMatrix block_diagonal(const std::vector<Matrix>& blocks);

 private:
  std::size_t cell(int i, int j) const { return static_cast<std::size_t>(i) * dims_.size() + j; }

  std::vector<int> dims_;
  int total_ = 0;
  std::vector<Matrix> blocks_;
  std::vector<char> assigned_;
};

}  // namespace mplex
