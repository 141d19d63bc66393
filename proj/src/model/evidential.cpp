#include "bsa/model/evidential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsa/core/error.hpp"
#include "bsa/model/special_functions.hpp"

namespace bsa::model {

double kl_annealing(int epoch, int anneal_epochs) {
  if (anneal_epochs <= 0) return 1.0;
  return std::min(1.0, static_cast<double>(std::max(epoch, 0)) / static_cast<double>(anneal_epochs));
}

EvidentialLoss evidential_loss(std::span<const double> alpha, int target, int epoch, int anneal_epochs) {
  const std::size_t k = alpha.size();
  if (target < 0 || static_cast<std::size_t>(target) >= k) {
    throw Error(Errc::InvalidAlpha, "target " + std::to_string(target) + " outside " + std::to_string(k) + " classes");
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (!(alpha[j] >= 1.0) || !std::isfinite(alpha[j])) {
      throw Error(Errc::InvalidAlpha, "alpha[" + std::to_string(j) + "] = " + std::to_string(alpha[j]));
    }
  }
  const auto t = static_cast<std::size_t>(target);

  EvidentialLoss out;
  out.grad.assign(k, 0.0);
  out.lambda = kl_annealing(epoch, anneal_epochs);

  // Risk written with S = sum alpha and Q = sum alpha^2:
  //   err = 1 - 2 alpha_t / S + Q / S^2,  var = (1 - Q / S^2) / (S + 1).
  double s = 0.0;
  double q = 0.0;
  for (double a : alpha) {
    s += a;
    q += a * a;
  }
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double err = 1.0 - 2.0 * alpha[t] / s + q / s2;
  const double g = 1.0 - q / s2;
  const double h = 1.0 / (s + 1.0);
  out.risk = err + g * h;
  for (std::size_t j = 0; j < k; ++j) {
    const double y = j == t ? 1.0 : 0.0;
    const double derr = -2.0 * y / s + 2.0 * alpha[t] / s2 + 2.0 * alpha[j] / s2 - 2.0 * q / s3;
    const double dg = -2.0 * alpha[j] / s2 + 2.0 * q / s3;
    out.grad[j] = derr + dg * h - g * h * h;
  }

  if (out.lambda > 0.0) {
    std::vector<double> at(alpha.begin(), alpha.end());
    at[t] = 1.0;
    double st = 0.0;
    for (double a : at) st += a;
    const double kd = static_cast<double>(k);
    double kl = std::lgamma(st) - std::lgamma(kd);
    const double psi_s = digamma(st);
    for (double a : at) kl += -std::lgamma(a) + (a - 1.0) * (digamma(a) - psi_s);
    out.kl = kl;
    const double tri_s = trigamma(st);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == t) continue;  // alpha_tilde_t is constant
      out.grad[j] += out.lambda * ((at[j] - 1.0) * trigamma(at[j]) - (st - kd) * tri_s);
    }
  }
  out.loss = out.risk + out.lambda * out.kl;
  return out;
}

}  // namespace bsa::model
