#include "bsa/model/config.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"

namespace bsa::model {

void ModelConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::ShapeMismatch, m); };
  if (patch < 1) fail("patch size must be >= 1");
  if (depth < 1) fail("depth must be >= 1");
  if (frames < 1) fail("frames must be >= 1");
  if (heads < 1 || dim < 1 || dim % heads != 0) fail("dim must be divisible by heads");
  if (height % patch != 0 || width % patch != 0) fail("frame size must be divisible by the patch size");
  if (mlp_hidden < 1) fail("mlp_hidden must be >= 1");
  if (n_classes < 2) fail("n_classes must be >= 2");
  if (dominant_index < 0 || dominant_index >= n_classes) fail("dominant_index out of range");
}

ModelConfig toy_config(int frames, int height, int width, int patch, int dim, int depth, int heads) {
  ModelConfig c;
  c.frames = frames;
  c.height = height;
  c.width = width;
  c.patch = patch;
  c.dim = dim;
  c.depth = depth;
  c.heads = heads;
  c.mlp_hidden = 2 * dim;
  c.validate();
  return c;
}

nlohmann::json to_json(const ModelConfig& c) {
  return {{"frames", c.frames},         {"height", c.height},
          {"width", c.width},           {"patch", c.patch},
          {"dim", c.dim},               {"depth", c.depth},
          {"heads", c.heads},           {"mlp_hidden", c.mlp_hidden},
          {"n_classes", c.n_classes},   {"dominant_index", c.dominant_index},
          {"dual_head", c.dual_head},   {"ln_eps", c.ln_eps}};
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.frames = j.value("frames", c.frames);
  c.height = j.value("height", c.height);
  c.width = j.value("width", c.width);
  c.patch = j.value("patch", c.patch);
  c.dim = j.value("dim", c.dim);
  c.depth = j.value("depth", c.depth);
  c.heads = j.value("heads", c.heads);
  c.mlp_hidden = j.value("mlp_hidden", c.mlp_hidden);
  c.n_classes = j.value("n_classes", c.n_classes);
  c.dominant_index = j.value("dominant_index", c.dominant_index);
  c.dual_head = j.value("dual_head", c.dual_head);
  c.ln_eps = j.value("ln_eps", c.ln_eps);
  c.validate();
  return c;
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"anneal_epochs", c.anneal_epochs},
          {"lr", c.sgd.lr},
          {"momentum", c.sgd.momentum},
          {"weight_decay", c.sgd.weight_decay},
          {"seed", c.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.anneal_epochs = j.value("anneal_epochs", c.anneal_epochs);
  c.sgd.lr = j.value("lr", c.sgd.lr);
  c.sgd.momentum = j.value("momentum", c.sgd.momentum);
  c.sgd.weight_decay = j.value("weight_decay", c.sgd.weight_decay);
  c.seed = j.value("seed", c.seed);
  if (c.batch_size < 1 || c.epochs < 0 || c.anneal_epochs < 1) {
    throw Error(Errc::InvalidArgument, "train config: batch_size >= 1, epochs >= 0, anneal_epochs >= 1");
  }
  return c;
}

}  // namespace bsa::model
