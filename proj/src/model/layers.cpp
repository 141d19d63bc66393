#include "bsa/model/layers.hpp"

#include <cmath>
#include <numbers>

namespace bsa::model {

void layer_norm_forward(const Matrix& x, const LayerNormParams& p, double eps, Matrix& y, LayerNormCache* cache) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  y.resize(n, d);
  if (cache) {
    cache->xhat.resize(n, d);
    cache->inv_std.assign(n, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto xr = x.row(i);
    double mean = 0.0;
    for (double v : xr) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : xr) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double inv = 1.0 / std::sqrt(var + eps);
    for (std::size_t j = 0; j < d; ++j) {
      const double h = (xr[j] - mean) * inv;
      if (cache) cache->xhat(i, j) = h;
      y(i, j) = p.gamma(0, j) * h + p.beta(0, j);
    }
    if (cache) cache->inv_std[i] = inv;
  }
}

void layer_norm_backward(const Matrix& dy, const LayerNormParams& p, const LayerNormCache& cache, Matrix& dx,
                         LayerNormParams& grads) {
  const std::size_t n = dy.rows();
  const std::size_t d = dy.cols();
  std::vector<double> dxhat(d);
  for (std::size_t i = 0; i < n; ++i) {
    double mean_d = 0.0;
    double mean_dx = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double g = dy(i, j);
      const double h = cache.xhat(i, j);
      grads.gamma(0, j) += g * h;
      grads.beta(0, j) += g;
      dxhat[j] = g * p.gamma(0, j);
      mean_d += dxhat[j];
      mean_dx += dxhat[j] * h;
    }
    mean_d /= static_cast<double>(d);
    mean_dx /= static_cast<double>(d);
    const double inv = cache.inv_std[i];
    for (std::size_t j = 0; j < d; ++j) dx(i, j) += inv * (dxhat[j] - mean_d - cache.xhat(i, j) * mean_dx);
  }
}

double gelu(double x) noexcept { return 0.5 * x * (1.0 + std::erf(x * std::numbers::sqrt2 / 2.0)); }

double gelu_grad(double x) noexcept {
  const double cdf = 0.5 * (1.0 + std::erf(x * std::numbers::sqrt2 / 2.0));
  const double pdf = std::exp(-0.5 * x * x) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  return cdf + x * pdf;
}

double softplus(double x) noexcept {
  // log(1 + e^x) without overflow for large |x|.
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void linear_forward(const Matrix& x, const Matrix& w, const Matrix& b, Matrix& y) {
  y.resize(x.rows(), w.cols());
  gemm_acc(x, w, y);
  add_row_bias(b, y);
}

void linear_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix* dx, Matrix& dw, Matrix& db) {
  if (dx) gemm_nt_acc(dy, w, *dx);
  gemm_tn_acc(x, dy, dw);
  column_sum_acc(dy, db);
}

}  // namespace bsa::model
