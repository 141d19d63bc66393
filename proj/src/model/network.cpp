#include "bsa/model/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsa/core/error.hpp"
#include "bsa/simd/kernels.hpp"

namespace bsa::model {
namespace {

void require_finite(const Matrix& m, const std::string& stage) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j))) {
        throw Error(Errc::NonFiniteActivation, stage + ": value " + std::to_string(m(i, j)) + " at token " +
                                                   std::to_string(i) + ", channel " + std::to_string(j));
      }
    }
  }
}

void require_finite(std::span<const double> v, const std::string& stage) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(Errc::NonFiniteActivation, stage + ": value " + std::to_string(v[i]) + " at index " + std::to_string(i));
    }
  }
}

Matrix row_as_matrix(const Matrix& m, std::size_t r) {
  Matrix out(1, m.cols());
  std::copy(m.row(r).begin(), m.row(r).end(), out.row(0).begin());
  return out;
}

Matrix block_backward(const Matrix& dout, const BlockParams& b, const ModelConfig& c, const BlockCache& cache,
                      BlockParams& g) {
  const int n = c.patches_per_frame();
  // MLP stage
  Matrix dx2 = dout;
  Matrix dact(cache.mlp_act.rows(), cache.mlp_act.cols());
  linear_backward(cache.mlp_act, b.mlp_w2, dout, &dact, g.mlp_w2, g.mlp_b2);
  for (std::size_t i = 0; i < dact.rows(); ++i) {
    for (std::size_t j = 0; j < dact.cols(); ++j) dact(i, j) *= gelu_grad(cache.mlp_pre(i, j));
  }
  Matrix du3(dout.rows(), dout.cols());
  linear_backward(cache.mlp_in, b.mlp_w1, dact, &du3, g.mlp_w1, g.mlp_b1);
  layer_norm_backward(du3, b.ln_mlp, cache.ln_mlp, dx2, g.ln_mlp);

  // Spatial stage
  Matrix dx1 = dx2;
  Matrix du2(dout.rows(), dout.cols());
  grouped_attention_backward(dx2, b.spatial, spatial_groups(n, c.frames), c.heads, cache.spatial, du2, g.spatial);
  layer_norm_backward(du2, b.ln_spatial, cache.ln_spatial, dx1, g.ln_spatial);

  // Temporal stage
  Matrix dx0 = dx1;
  Matrix du1(dout.rows(), dout.cols());
  grouped_attention_backward(dx1, b.temporal, temporal_groups(n, c.frames), c.heads, cache.temporal, du1, g.temporal);
  layer_norm_backward(du1, b.ln_temporal, cache.ln_temporal, dx0, g.ln_temporal);
  return dx0;
}

}  // namespace

Matrix extract_patches(const ClipTensor& clip, const ModelConfig& c) {
  if (clip.frames() != c.frames || clip.height() != c.height || clip.width() != c.width) {
    throw Error(Errc::ShapeMismatch, "clip is " + std::to_string(clip.frames()) + "x" + std::to_string(clip.height()) +
                                         "x" + std::to_string(clip.width()) + ", model expects " +
                                         std::to_string(c.frames) + "x" + std::to_string(c.height) + "x" +
                                         std::to_string(c.width));
  }
  if (c.height % c.patch != 0 || c.width % c.patch != 0) {
    throw Error(Errc::ShapeMismatch, "frame size not divisible by patch size");
  }
  const int n = c.patches_per_frame();
  const int per_row = c.width / c.patch;
  Matrix out(static_cast<std::size_t>(n * c.frames), static_cast<std::size_t>(c.patch_values()));
  for (int t = 0; t < c.frames; ++t) {
    for (int p = 0; p < n; ++p) {
      const int y0 = (p / per_row) * c.patch;
      const int x0 = (p % per_row) * c.patch;
      auto row = out.row(static_cast<std::size_t>(t * n + p));
      std::size_t k = 0;
      for (int dy = 0; dy < c.patch; ++dy)
        for (int dx = 0; dx < c.patch; ++dx)
          for (int ch = 0; ch < 3; ++ch) row[k++] = clip.at(t, y0 + dy, x0 + dx, ch);
    }
  }
  return out;
}

namespace {

Matrix embed_patches(const Matrix& patches, const ModelParams& params) {
  const std::size_t d = params.cls_token.cols();
  Matrix tokens(patches.rows() + 1, d);
  Matrix projected(patches.rows(), d);
  gemm_nt_acc(patches, params.patch_proj, projected);
  std::copy(params.cls_token.row(0).begin(), params.cls_token.row(0).end(), tokens.row(0).begin());
  for (std::size_t i = 0; i < projected.rows(); ++i) {
    std::copy(projected.row(i).begin(), projected.row(i).end(), tokens.row(i + 1).begin());
  }
  simd::add(params.pos_embed.flat(), tokens.flat());
  return tokens;
}

}  // namespace

Matrix patchify_embed(const ClipTensor& clip, const ModelParams& params, const ModelConfig& c) {
  return embed_patches(extract_patches(clip, c), params);
}

Matrix divided_attention_block(const Matrix& tokens, const BlockParams& b, const ModelConfig& c, BlockCache* cache,
                               ComparisonCounter* counter) {
  const int n = c.patches_per_frame();
  if (tokens.rows() != static_cast<std::size_t>(c.num_tokens()) || tokens.cols() != static_cast<std::size_t>(c.dim)) {
    throw Error(Errc::ShapeMismatch, "block input must be (N*T+1) x D");
  }
  BlockCache local;
  BlockCache& bc = cache ? *cache : local;
  const bool keep = cache != nullptr;

  Matrix u, a;
  layer_norm_forward(tokens, b.ln_temporal, c.ln_eps, u, keep ? &bc.ln_temporal : nullptr);
  grouped_attention_forward(u, b.temporal, temporal_groups(n, c.frames), c.heads, a, keep ? &bc.temporal : nullptr,
                            counter);
  Matrix x1 = tokens;
  simd::add(a.flat(), x1.flat());

  layer_norm_forward(x1, b.ln_spatial, c.ln_eps, u, keep ? &bc.ln_spatial : nullptr);
  grouped_attention_forward(u, b.spatial, spatial_groups(n, c.frames), c.heads, a, keep ? &bc.spatial : nullptr,
                            counter);
  Matrix x2 = std::move(x1);
  simd::add(a.flat(), x2.flat());

  Matrix mlp_in, pre, act, m;
  layer_norm_forward(x2, b.ln_mlp, c.ln_eps, mlp_in, keep ? &bc.ln_mlp : nullptr);
  linear_forward(mlp_in, b.mlp_w1, b.mlp_b1, pre);
  act.resize(pre.rows(), pre.cols());
  for (std::size_t i = 0; i < pre.size(); ++i) act.flat()[i] = gelu(pre.flat()[i]);
  linear_forward(act, b.mlp_w2, b.mlp_b2, m);
  simd::add(m.flat(), x2.flat());

  if (keep) {
    bc.mlp_in = std::move(mlp_in);
    bc.mlp_pre = std::move(pre);
    bc.mlp_act = std::move(act);
  }
  return x2;
}

DirichletOutput apply_dual_head(std::span<const double> evidence, double w_p, double w_c, int dominant_index) {
  DirichletOutput out;
  out.evidence.assign(evidence.begin(), evidence.end());
  out.w_p = w_p;
  out.w_c = w_c;
  out.alpha.resize(evidence.size());
  double total = 0.0;
  for (std::size_t j = 0; j < evidence.size(); ++j) {
    const double w = static_cast<int>(j) == dominant_index ? w_p : w_c;
    out.alpha[j] = w * evidence[j] + 1.0;
    total += out.alpha[j];
  }
  out.probabilities.resize(evidence.size());
  for (std::size_t j = 0; j < evidence.size(); ++j) out.probabilities[j] = out.alpha[j] / total;
  out.uncertainty = static_cast<double>(evidence.size()) / total;
  return out;
}

std::pair<double, double> imbalance_head(std::span<const double> theta, const Matrix& imb_w, const Matrix& imb_b) {
  double pre_p = imb_b(0, 0);
  double pre_c = imb_b(0, 1);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    pre_p += theta[i] * imb_w(i, 0);
    pre_c += theta[i] * imb_w(i, 1);
  }
  return {2.0 * sigmoid(pre_p), 2.0 * sigmoid(pre_c)};
}

DirichletOutput forward(const ClipTensor& clip, const ModelParams& params, const ModelConfig& c, ForwardCache* cache,
                        ComparisonCounter* counter) {
  c.validate();
  ForwardCache local;
  ForwardCache& fc = cache ? *cache : local;
  const bool keep = cache != nullptr;
  if (counter) counter->reset(static_cast<std::size_t>(c.num_tokens()));

  Matrix patches = extract_patches(clip, c);
  Matrix tokens = embed_patches(patches, params);
  require_finite(tokens, "patch embedding");
  if (keep) {
    fc.patches = std::move(patches);
    fc.block_inputs.clear();
    fc.blocks.assign(params.blocks.size(), BlockCache{});
  }

  for (std::size_t l = 0; l < params.blocks.size(); ++l) {
    if (keep) fc.block_inputs.push_back(tokens);
    tokens = divided_attention_block(tokens, params.blocks[l], c, keep ? &fc.blocks[l] : nullptr, counter);
    require_finite(tokens, "block " + std::to_string(l));
  }

  Matrix cls = row_as_matrix(tokens, 0);
  Matrix theta;
  layer_norm_forward(cls, params.ln_final, c.ln_eps, theta, keep ? &fc.ln_final : nullptr);

  Matrix raw;
  linear_forward(theta, params.head_w, params.head_b, raw);
  require_finite(raw.flat(), "classification head");
  std::vector<double> evidence(raw.cols());
  for (std::size_t j = 0; j < raw.cols(); ++j) evidence[j] = softplus(raw(0, j));

  double w_p = 1.0;
  double w_c = 1.0;
  std::vector<double> imb_pre(2, 0.0);
  if (c.dual_head) {
    Matrix pre;
    linear_forward(theta, params.imb_w, params.imb_b, pre);
    imb_pre = {pre(0, 0), pre(0, 1)};
    require_finite(imb_pre, "imbalance head");
    w_p = 2.0 * sigmoid(imb_pre[0]);
    w_c = 2.0 * sigmoid(imb_pre[1]);
  }

  DirichletOutput out = apply_dual_head(evidence, w_p, w_c, c.dominant_index);
  require_finite(out.alpha, "dirichlet parameters");
  if (keep) {
    fc.final_in = std::move(tokens);
    fc.theta = std::move(theta);
    fc.raw_scores.assign(raw.flat().begin(), raw.flat().end());
    fc.imb_pre = imb_pre;
    fc.out = out;
  }
  return out;
}

void backward(std::span<const double> dalpha, const ModelParams& params, const ModelConfig& c,
              const ForwardCache& cache, ModelParams& grads) {
  const auto k = static_cast<std::size_t>(c.n_classes);
  if (dalpha.size() != k) throw Error(Errc::ShapeMismatch, "dalpha has the wrong length");
  const auto& out = cache.out;
  const auto dom = static_cast<std::size_t>(c.dominant_index);

  // alpha_j = w_j * e_j + 1, e_j = softplus(raw_j)
  Matrix draw(1, k);
  double dw_p = 0.0;
  double dw_c = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double w = j == dom ? out.w_p : out.w_c;
    draw(0, j) = dalpha[j] * w * sigmoid(cache.raw_scores[j]);
    if (j == dom) dw_p += dalpha[j] * out.evidence[j];
    else dw_c += dalpha[j] * out.evidence[j];
  }

  Matrix dtheta(1, static_cast<std::size_t>(c.dim));
  linear_backward(cache.theta, params.head_w, draw, &dtheta, grads.head_w, grads.head_b);

  if (c.dual_head) {
    Matrix dpre(1, 2);
    const double sp = sigmoid(cache.imb_pre[0]);
    const double sc = sigmoid(cache.imb_pre[1]);
    dpre(0, 0) = dw_p * 2.0 * sp * (1.0 - sp);
    dpre(0, 1) = dw_c * 2.0 * sc * (1.0 - sc);
    linear_backward(cache.theta, params.imb_w, dpre, &dtheta, grads.imb_w, grads.imb_b);
  }

  Matrix dcls(1, static_cast<std::size_t>(c.dim));
  layer_norm_backward(dtheta, params.ln_final, cache.ln_final, dcls, grads.ln_final);

  Matrix dtokens(static_cast<std::size_t>(c.num_tokens()), static_cast<std::size_t>(c.dim));
  std::copy(dcls.row(0).begin(), dcls.row(0).end(), dtokens.row(0).begin());
  for (std::size_t l = params.blocks.size(); l-- > 0;) {
    dtokens = block_backward(dtokens, params.blocks[l], c, cache.blocks[l], grads.blocks[l]);
  }

  simd::add(dtokens.row(0), grads.cls_token.row(0));
  simd::add(dtokens.flat(), grads.pos_embed.flat());
  Matrix dpatch_tokens(dtokens.rows() - 1, dtokens.cols());
  for (std::size_t i = 0; i < dpatch_tokens.rows(); ++i) {
    std::copy(dtokens.row(i + 1).begin(), dtokens.row(i + 1).end(), dpatch_tokens.row(i).begin());
  }
  gemm_tn_acc(dpatch_tokens, cache.patches, grads.patch_proj);
}

int argmax_lowest(std::span<const double> probabilities) {
  int best = 0;
  for (std::size_t j = 1; j < probabilities.size(); ++j) {
    if (probabilities[j] > probabilities[static_cast<std::size_t>(best)]) best = static_cast<int>(j);
  }
  return best;
}

int predict(const ClipTensor& clip, const ModelParams& params, const ModelConfig& c) {
  return argmax_lowest(forward(clip, params, c).probabilities);
}

}  // namespace bsa::model
