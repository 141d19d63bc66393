#include "bsa/simd/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "bsa/simd/kernels.hpp"

namespace bsa {

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

void Matrix::resize(std::size_t rows, std::size_t cols, double fill) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, fill);
}

namespace {
[[noreturn]] void shape_error(const char* what) { throw std::invalid_argument(what); }
}  // namespace

void gemm_acc(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols()) shape_error("gemm_acc: shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) simd::axpy(aik, b.row(k), crow);
    }
  }
}

void gemm_tn_acc(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.rows() != b.rows() || c.rows() != a.cols() || c.cols() != b.cols()) shape_error("gemm_tn_acc: shape mismatch");
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto brow = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      if (aki != 0.0) simd::axpy(aki, brow, c.row(i));
    }
  }
}

void gemm_nt_acc(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols() != b.cols() || c.rows() != a.rows() || c.cols() != b.rows()) shape_error("gemm_nt_acc: shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto arow = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) += simd::dot(arow, b.row(j));
  }
}

void add_row_bias(const Matrix& bias, Matrix& m) {
  if (bias.rows() != 1 || bias.cols() != m.cols()) shape_error("add_row_bias: shape mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i) simd::add(bias.row(0), m.row(i));
}

void column_sum_acc(const Matrix& m, Matrix& out) {
  if (out.rows() != 1 || out.cols() != m.cols()) shape_error("column_sum_acc: shape mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i) simd::add(m.row(i), out.row(0));
}

}  // namespace bsa
