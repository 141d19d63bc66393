#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bsa/model/config.hpp"
#include "bsa/model/network.hpp"
#include "bsa/model/params.hpp"

namespace bsa::model {

struct LabeledClip {
  ClipTensor clip;
  int label = 0;
};

struct EpochStats {
  int epoch = 0;
  double mean_loss = 0.0;
  /// Fraction of training clips whose prediction (taken before each batch's
  /// update) matched the label.
  double train_accuracy = 0.0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> history;
};

/// Forward, evidential loss and backward for one clip. Accumulates the
/// gradient into `grads` scaled by `weight` and returns the unscaled loss.
double sample_loss_and_grad(const LabeledClip& sample, const ModelParams& params, const ModelConfig& c, int epoch,
                            int anneal_epochs, ModelParams& grads, double weight = 1.0, int* predicted = nullptr);

/// Loss only, no gradient.
double sample_loss(const LabeledClip& sample, const ModelParams& params, const ModelConfig& c, int epoch,
                   int anneal_epochs);

using EpochCallback = std::function<void(const EpochStats&)>;

/// Seeded mini-batch momentum SGD from a fresh initialization. Identical seeds
/// give bitwise-identical histories and parameters on the same build.
/// Throws Error(EmptyDataset) for an empty dataset and Error(OutOfRange) for a
/// label outside [0, n_classes).
TrainResult train_toy(std::span<const LabeledClip> data, const ModelConfig& c, const TrainConfig& tc,
                      const EpochCallback& on_epoch = {});

std::vector<int> predict_all(std::span<const LabeledClip> data, const ModelParams& params, const ModelConfig& c);
double accuracy(std::span<const LabeledClip> data, const ModelParams& params, const ModelConfig& c);

}  // namespace bsa::model
