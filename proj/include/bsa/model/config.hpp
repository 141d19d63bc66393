#pragma once

#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "bsa/core/action.hpp"

namespace bsa::model {

/// Architecture of the divided space-time attention classifier.
struct ModelConfig {
  int frames = 16;        // T
  int height = 224;       // H
  int width = 224;        // W
  int patch = 16;         // P
  int dim = 768;          // D
  int depth = 12;         // L
  int heads = 12;
  int mlp_hidden = 3072;  // hidden width of the per-block MLP
  int n_classes = static_cast<int>(kNumActions);
  int dominant_index = static_cast<int>(ActionClass::Dissection);
  /// When false the imbalance head is bypassed and w_p = w_c = 1 (ablation).
  bool dual_head = true;
  double ln_eps = 1e-6;

  int patches_per_frame() const noexcept { return (height / patch) * (width / patch); }  // N
  int num_tokens() const noexcept { return patches_per_frame() * frames + 1; }
  int patch_values() const noexcept { return patch * patch * 3; }
  int head_dim() const noexcept { return dim / heads; }

  /// Throws Error(ShapeMismatch) on inconsistent sizes.
  void validate() const;
};

/// Small configuration used by the unit tests and the acceptance runs.
ModelConfig toy_config(int frames, int height, int width, int patch, int dim, int depth, int heads);

nlohmann::json to_json(const ModelConfig& c);
ModelConfig model_config_from_json(const nlohmann::json& j);

struct SgdConfig {
  double lr = 0.005;
  double momentum = 0.9;
  double weight_decay = 0.001;
};

struct TrainConfig {
  int epochs = 50;
  int batch_size = 6;
  int anneal_epochs = 10;
  SgdConfig sgd;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const TrainConfig& c);
TrainConfig train_config_from_json(const nlohmann::json& j);

}  // namespace bsa::model
