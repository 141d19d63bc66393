#include "bsa/model/trainer.hpp"

#include <numeric>
#include <string>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"
#include "bsa/model/evidential.hpp"
#include "bsa/model/optimizer.hpp"
#include "bsa/simd/kernels.hpp"

namespace bsa::model {

double sample_loss_and_grad(const LabeledClip& sample, const ModelParams& params, const ModelConfig& c, int epoch,
                            int anneal_epochs, ModelParams& grads, double weight, int* predicted) {
  ForwardCache cache;
  const DirichletOutput out = forward(sample.clip, params, c, &cache);
  if (predicted) *predicted = argmax_lowest(out.probabilities);
  EvidentialLoss loss = evidential_loss(out.alpha, sample.label, epoch, anneal_epochs);
  if (weight != 1.0) simd::scale(weight, loss.grad);
  backward(loss.grad, params, c, cache, grads);
  return loss.loss;
}

double sample_loss(const LabeledClip& sample, const ModelParams& params, const ModelConfig& c, int epoch,
                   int anneal_epochs) {
  const DirichletOutput out = forward(sample.clip, params, c);
  return evidential_loss(out.alpha, sample.label, epoch, anneal_epochs).loss;
}

TrainResult train_toy(std::span<const LabeledClip> data, const ModelConfig& c, const TrainConfig& tc,
                      const EpochCallback& on_epoch) {
  if (data.empty()) throw Error(Errc::EmptyDataset, "training set is empty");
  for (const auto& s : data) {
    if (s.label < 0 || s.label >= c.n_classes) {
      throw Error(Errc::OutOfRange, "label " + std::to_string(s.label) + " outside the taxonomy");
    }
  }

  TrainResult result;
  result.params = ModelParams::init(c, derive_seed(tc.seed, 0));
  ModelParams grads = ModelParams::zeros(c);
  SgdOptimizer opt(tc.sgd);

  std::vector<std::size_t> order(data.size());
  for (int epoch = 0; epoch < tc.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(tc.seed, 1 + static_cast<std::uint64_t>(epoch)));
    shuffle(std::span<std::size_t>(order), rng);

    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(tc.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(tc.batch_size));
      const double weight = 1.0 / static_cast<double>(end - start);
      grads.set_zero();
      for (std::size_t i = start; i < end; ++i) {
        const auto& s = data[order[i]];
        int pred = -1;
        loss_sum += sample_loss_and_grad(s, result.params, c, epoch, tc.anneal_epochs, grads, weight, &pred);
        if (pred == s.label) ++correct;
      }
      opt.step(result.params, grads);
    }
    EpochStats stats{epoch, loss_sum / static_cast<double>(data.size()),
                     static_cast<double>(correct) / static_cast<double>(data.size())};
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }
  return result;
}

std::vector<int> predict_all(std::span<const LabeledClip> data, const ModelParams& params, const ModelConfig& c) {
  std::vector<int> out;
  out.reserve(data.size());
  for (const auto& s : data) out.push_back(predict(s.clip, params, c));
  return out;
}

double accuracy(std::span<const LabeledClip> data, const ModelParams& params, const ModelConfig& c) {
  if (data.empty()) return 0.0;
  const auto preds = predict_all(data, params, c);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) correct += preds[i] == data[i].label ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace bsa::model
