#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bsa/model/attention.hpp"
#include "bsa/model/config.hpp"
#include "bsa/model/layers.hpp"
#include "bsa/model/params.hpp"

namespace bsa::model {

/// T x H x W x 3 frame stack, values in [0, 1], stored frame-major then
/// row-major with interleaved RGB.
class ClipTensor {
 public:
  ClipTensor() = default;
  ClipTensor(int frames, int height, int width)
      : frames_(frames), height_(height), width_(width),
        data_(static_cast<std::size_t>(frames) * height * width * 3, 0.0) {}

  int frames() const noexcept { return frames_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }

  double& at(int t, int y, int x, int c) noexcept { return data_[index(t, y, x, c)]; }
  double at(int t, int y, int x, int c) const noexcept { return data_[index(t, y, x, c)]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

 private:
  std::size_t index(int t, int y, int x, int c) const noexcept {
    return ((static_cast<std::size_t>(t) * height_ + y) * width_ + x) * 3 + c;
  }
  int frames_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

/// Flattened patches, one row per (p, t) in token order (row t*N + p).
/// Each row lists the P x P x 3 values in (dy, dx, channel) order.
/// Throws Error(ShapeMismatch) if the clip does not match the config.
Matrix extract_patches(const ClipTensor& clip, const ModelConfig& c);

/// Token sequence of length N*T + 1: row 0 is cls_token + pos[0], row
/// 1 + t*N + p is patch_proj * patch(p,t) + pos[1 + t*N + p].
Matrix patchify_embed(const ClipTensor& clip, const ModelParams& params, const ModelConfig& c);

struct BlockCache {
  LayerNormCache ln_temporal, ln_spatial, ln_mlp;
  AttentionCache temporal, spatial;
  Matrix mlp_in;      // normalized tokens entering the MLP
  Matrix mlp_pre;     // hidden pre-activation
  Matrix mlp_act;     // GELU(hidden)
};

/// LayerNorm -> temporal attention -> residual, LayerNorm -> spatial attention
/// -> residual, LayerNorm -> MLP -> residual.
Matrix divided_attention_block(const Matrix& tokens, const BlockParams& block, const ModelConfig& c,
                               BlockCache* cache = nullptr, ComparisonCounter* counter = nullptr);

/// Dual-head output of one clip.
struct DirichletOutput {
  std::vector<double> evidence;  // raw evidence from the MLP head (>= 0)
  std::vector<double> alpha;     // adjusted evidence + 1
  std::vector<double> probabilities;
  double uncertainty = 1.0;  // n_classes / sum(alpha)
  double w_p = 1.0;
  double w_c = 1.0;
};

/// Scales the dominant class's evidence by w_p and every other class by w_c,
/// then forms the Dirichlet parameters alpha = adjusted + 1.
DirichletOutput apply_dual_head(std::span<const double> evidence, double w_p, double w_c, int dominant_index);

/// Affine map of the class feature followed by 2*sigmoid, so each weight lies
/// in (0, 2) and a zero head gives exactly (1, 1).
std::pair<double, double> imbalance_head(std::span<const double> theta, const Matrix& imb_w, const Matrix& imb_b);

struct ForwardCache {
  Matrix patches;                 // extracted patches (N*T x P*P*3)
  std::vector<Matrix> block_inputs;
  std::vector<BlockCache> blocks;
  Matrix final_in;                // encoder output
  LayerNormCache ln_final;        // over the class-token row only
  Matrix theta;                   // 1 x D class feature
  std::vector<double> raw_scores;
  std::vector<double> imb_pre;    // imbalance pre-activations (2)
  DirichletOutput out;
};

/// Full forward pass. Throws Error(NonFiniteActivation) naming the stage that
/// produced a NaN or infinity.
DirichletOutput forward(const ClipTensor& clip, const ModelParams& params, const ModelConfig& c,
                        ForwardCache* cache = nullptr, ComparisonCounter* counter = nullptr);

/// Backpropagates dLoss/dalpha through the cached forward pass, accumulating
/// into `grads`.
void backward(std::span<const double> dalpha, const ModelParams& params, const ModelConfig& c,
              const ForwardCache& cache, ModelParams& grads);

/// Argmax of the probabilities; ties go to the lowest class index.
int argmax_lowest(std::span<const double> probabilities);

/// Predicted class index for a clip.
int predict(const ClipTensor& clip, const ModelParams& params, const ModelConfig& c);

}  // namespace bsa::model
