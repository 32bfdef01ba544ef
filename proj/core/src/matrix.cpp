#include "mplex/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace mplex {
namespace {

void require_shape(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("matrix shape must be positive, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

void require_finite(const Vec& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) throw DimensionError("matrix entries must be finite");
  }
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::initializer_list<double> entries)
    : Matrix(rows, cols, Vec(entries)) {}

Matrix::Matrix(int rows, int cols, Vec entries) : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_shape(rows, cols);
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("entry count does not match matrix shape");
  }
  require_finite(data_);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product: inner dimensions differ");
  Matrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (double v : data_)
    if (v != 0.0) return false;
  return true;
}

Vec Matrix::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols_) throw DimensionError("matvec: length mismatch");
  Vec y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

BlockMatrix::BlockMatrix(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw DimensionError("block matrix needs at least one block row");
  for (int d : dims_) {
    if (d <= 0) throw DimensionError("block dimensions must be positive");
    total_ += d;
  }
  const std::size_t n = dims_.size();
  blocks_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) blocks_.emplace_back(dims_[i], dims_[j]);
  assigned_.assign(n * n, 0);
}

void BlockMatrix::set_block(int i, int j, Matrix m) {
  if (i < 0 || j < 0 || i >= grid_size() || j >= grid_size()) {
    throw DimensionError("block index out of range");
  }
  if (m.rows() != dims_[i] || m.cols() != dims_[j]) {
    throw DimensionError("block shape does not match the grid dims");
  }
  assigned_[cell(i, j)] = m.is_zero() ? 0 : 1;
  blocks_[cell(i, j)] = std::move(m);
}

const Matrix& BlockMatrix::block(int i, int j) const {
  if (i < 0 || j < 0 || i >= grid_size() || j >= grid_size()) {
    throw DimensionError("block index out of range");
  }
  return blocks_[cell(i, j)];
}

bool BlockMatrix::is_zero_block(int i, int j) const { return assigned_[cell(i, j)] == 0; }

Matrix BlockMatrix::flatten() const {
  Matrix out(total_, total_);
  int row0 = 0;
  for (int i = 0; i < grid_size(); ++i) {
    int col0 = 0;
    for (int j = 0; j < grid_size(); ++j) {
      const Matrix& b = blocks_[cell(i, j)];
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) out(row0 + r, col0 + c) = b(r, c);
      col0 += dims_[j];
    }
    row0 += dims_[i];
  }
  return out;
}

BlockMatrix BlockMatrix::block_diagonal(const std::vector<Matrix>& blocks) {
  std::vector<int> dims;
  dims.reserve(blocks.size());
  for (const Matrix& b : blocks) {
    if (b.rows() != b.cols()) throw DimensionError("block_diagonal expects square blocks");
    dims.push_back(b.rows());
  }
  BlockMatrix out(dims);
  for (std::size_t i = 0; i < blocks.size(); ++i) out.set_block(static_cast<int>(i), static_cast<int>(i), blocks[i]);
  return out;
}

}  // namespace mplex
