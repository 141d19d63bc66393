#pragma once

#include <vector>

#include "bsa/model/params.hpp"
#include "bsa/simd/matrix.hpp"

namespace bsa::model {

struct LayerNormCache {
  Matrix xhat;
  std::vector<double> inv_std;
};

/// Row-wise layer normalization: y = gamma * (x - mean) / sqrt(var + eps) + beta.
void layer_norm_forward(const Matrix& x, const LayerNormParams& p, double eps, Matrix& y, LayerNormCache* cache);
/// Accumulates into dx and the parameter gradients.
void layer_norm_backward(const Matrix& dy, const LayerNormParams& p, const LayerNormCache& cache, Matrix& dx,
                         LayerNormParams& grads);

double gelu(double x) noexcept;
double gelu_grad(double x) noexcept;
double softplus(double x) noexcept;
double sigmoid(double x) noexcept;

/// y = x * w + b (y is overwritten).
void linear_forward(const Matrix& x, const Matrix& w, const Matrix& b, Matrix& y);
/// Accumulates dx += dy * w^T, dw += x^T * dy, db += colsum(dy).
void linear_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix* dx, Matrix& dw, Matrix& db);

}  // namespace bsa::model
