#include "bsa/model/optimizer.hpp"

#include "bsa/core/error.hpp"
#include "bsa/simd/kernels.hpp"

namespace bsa::model {

void sgd_update(std::span<double> param, std::span<const double> grad, std::span<double> velocity,
                const SgdConfig& cfg) {
  if (param.size() != grad.size() || param.size() != velocity.size()) {
    throw Error(Errc::ShapeMismatch, "sgd_update: parameter, gradient and velocity lengths differ");
  }
  simd::scale(cfg.momentum, velocity);
  simd::add(grad, velocity);
  if (cfg.weight_decay != 0.0) simd::axpy(cfg.weight_decay, param, velocity);
  simd::axpy(-cfg.lr, velocity, param);
}

void SgdOptimizer::step(ModelParams& params, const ModelParams& grads) {
  auto p = params.named_tensors();
  auto g = grads.named_tensors();
  if (p.size() != g.size()) throw Error(Errc::ShapeMismatch, "gradient set does not match parameters");
  if (!initialized_) {
    velocity_ = params;
    velocity_.set_zero();
    initialized_ = true;
  }
  auto v = velocity_.named_tensors();
  if (v.size() != p.size()) throw Error(Errc::ShapeMismatch, "optimizer state does not match parameters");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].second->same_shape(*g[i].second) || !p[i].second->same_shape(*v[i].second)) {
      throw Error(Errc::ShapeMismatch, "tensor " + p[i].first + " shape differs from its gradient");
    }
    sgd_update(p[i].second->flat(), g[i].second->flat(), v[i].second->flat(), cfg_);
  }
}

}  // namespace bsa::model
