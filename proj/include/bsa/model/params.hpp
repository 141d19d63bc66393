#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bsa/model/config.hpp"
#include "bsa/simd/matrix.hpp"

namespace bsa::model {

struct LayerNormParams {
  Matrix gamma;  // 1 x D
  Matrix beta;   // 1 x D
};

/// Multi-head self-attention weights. Projections are applied as x * W + b.
struct AttentionParams {
  Matrix wq, wk, wv, wo;  // D x D
  Matrix bq, bk, bv, bo;  // 1 x D
};

struct BlockParams {
  LayerNormParams ln_temporal;
  AttentionParams temporal;
  LayerNormParams ln_spatial;
  AttentionParams spatial;
  LayerNormParams ln_mlp;
  Matrix mlp_w1;  // D x hidden
  Matrix mlp_b1;  // 1 x hidden
  Matrix mlp_w2;  // hidden x D
  Matrix mlp_b2;  // 1 x D
};

/// All trainable tensors. The same type holds gradients and optimizer state.
struct ModelParams {
  Matrix patch_proj;  // D x (P*P*3); token = patch_proj * patch + pos
  Matrix cls_token;   // 1 x D
  Matrix pos_embed;   // (N*T + 1) x D, row 0 is the class-token slot
  std::vector<BlockParams> blocks;
  LayerNormParams ln_final;
  Matrix head_w;  // D x n_classes
  Matrix head_b;  // 1 x n_classes
  Matrix imb_w;   // D x 2, columns (w_p, w_c)
  Matrix imb_b;   // 1 x 2

  /// Correctly shaped, all zero.
  static ModelParams zeros(const ModelConfig& c);
  /// Xavier-uniform projections, small uniform embeddings, unit LayerNorm
  /// gains, zero biases, zero imbalance head (so w_p = w_c = 1 initially).
  static ModelParams init(const ModelConfig& c, std::uint64_t seed);

  /// Stable (name, tensor) enumeration, e.g. "blocks.0.temporal.wq".
  std::vector<std::pair<std::string, Matrix*>> named_tensors();
  std::vector<std::pair<std::string, const Matrix*>> named_tensors() const;

  std::size_t num_values() const;
  void set_zero();
  bool all_finite() const;

  /// Throws Error(ShapeMismatch) when shapes disagree with `c`.
  void check_shapes(const ModelConfig& c) const;
};

}  // namespace bsa::model
