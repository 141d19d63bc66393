#pragma once

#include <span>

#include "bsa/model/config.hpp"
#include "bsa/model/params.hpp"

namespace bsa::model {

/// One SGD-with-momentum update on a flat tensor:
///   v <- momentum * v + grad + weight_decay * param
///   param <- param - lr * v
/// Throws Error(ShapeMismatch) when the spans differ in length.
void sgd_update(std::span<double> param, std::span<const double> grad, std::span<double> velocity,
                const SgdConfig& cfg);

/// Momentum SGD over a full parameter set; velocity buffers persist between
/// steps and start at zero.
class SgdOptimizer {
 public:
  explicit SgdOptimizer(SgdConfig cfg) : cfg_(cfg) {}

  const SgdConfig& config() const noexcept { return cfg_; }
  void set_learning_rate(double lr) noexcept { cfg_.lr = lr; }

  /// Throws Error(ShapeMismatch) when grads do not match params.
  void step(ModelParams& params, const ModelParams& grads);

 private:
  SgdConfig cfg_;
  ModelParams velocity_;
  bool initialized_ = false;
};

}  // namespace bsa::model
