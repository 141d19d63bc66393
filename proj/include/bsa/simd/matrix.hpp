#pragma once

// Row-major dense matrix plus the three GEMM shapes backprop needs. All
// products accumulate into the output (C += ...), which keeps gradient
// accumulation allocation-free.

#include <cstddef>
#include <span>
#include <vector>

namespace bsa {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  void fill(double v);
  void resize(std::size_t rows, std::size_t cols, double fill = 0.0);
  bool same_shape(const Matrix& o) const noexcept { return rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// C += A * B        (A: m x k, B: k x n, C: m x n)
void gemm_acc(const Matrix& a, const Matrix& b, Matrix& c);
/// C += A^T * B      (A: k x m, B: k x n, C: m x n)
void gemm_tn_acc(const Matrix& a, const Matrix& b, Matrix& c);
/// C += A * B^T      (A: m x k, B: n x k, C: m x n)
void gemm_nt_acc(const Matrix& a, const Matrix& b, Matrix& c);

/// Adds `bias` (1 x n) to every row of `m`.
void add_row_bias(const Matrix& bias, Matrix& m);
/// Accumulates column sums of `m` into `out` (1 x n).
void column_sum_acc(const Matrix& m, Matrix& out);

}  // namespace bsa
