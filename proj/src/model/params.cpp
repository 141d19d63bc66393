#include "bsa/model/params.hpp"

#include <cmath>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa::model {
namespace {

LayerNormParams ln_zeros(std::size_t d) { return {Matrix(1, d), Matrix(1, d)}; }

AttentionParams attn_zeros(std::size_t d) {
  return {Matrix(d, d), Matrix(d, d), Matrix(d, d), Matrix(d, d),
          Matrix(1, d), Matrix(1, d), Matrix(1, d), Matrix(1, d)};
}

void fill_uniform(Matrix& m, double bound, Rng& rng) {
  for (double& v : m.flat()) v = uniform(rng, -bound, bound);
}

void xavier(Matrix& m, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  fill_uniform(m, std::sqrt(6.0 / static_cast<double>(fan_in + fan_out)), rng);
}

template <class Params, class Out>
void collect(Params& p, Out& out) {
  out.emplace_back("patch_proj", &p.patch_proj);
  out.emplace_back("cls_token", &p.cls_token);
  out.emplace_back("pos_embed", &p.pos_embed);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    auto& b = p.blocks[i];
    const std::string pre = "blocks." + std::to_string(i) + ".";
    auto ln = [&](const std::string& name, auto& l) {
      out.emplace_back(pre + name + ".gamma", &l.gamma);
      out.emplace_back(pre + name + ".beta", &l.beta);
    };
    auto attn = [&](const std::string& name, auto& a) {
      out.emplace_back(pre + name + ".wq", &a.wq);
      out.emplace_back(pre + name + ".wk", &a.wk);
      out.emplace_back(pre + name + ".wv", &a.wv);
      out.emplace_back(pre + name + ".wo", &a.wo);
      out.emplace_back(pre + name + ".bq", &a.bq);
      out.emplace_back(pre + name + ".bk", &a.bk);
      out.emplace_back(pre + name + ".bv", &a.bv);
      out.emplace_back(pre + name + ".bo", &a.bo);
    };
    ln("ln_temporal", b.ln_temporal);
    attn("temporal", b.temporal);
    ln("ln_spatial", b.ln_spatial);
    attn("spatial", b.spatial);
    ln("ln_mlp", b.ln_mlp);
    out.emplace_back(pre + "mlp_w1", &b.mlp_w1);
    out.emplace_back(pre + "mlp_b1", &b.mlp_b1);
    out.emplace_back(pre + "mlp_w2", &b.mlp_w2);
    out.emplace_back(pre + "mlp_b2", &b.mlp_b2);
  }
  out.emplace_back("ln_final.gamma", &p.ln_final.gamma);
  out.emplace_back("ln_final.beta", &p.ln_final.beta);
  out.emplace_back("head_w", &p.head_w);
  out.emplace_back("head_b", &p.head_b);
  out.emplace_back("imb_w", &p.imb_w);
  out.emplace_back("imb_b", &p.imb_b);
}

}  // namespace

ModelParams ModelParams::zeros(const ModelConfig& c) {
  c.validate();
  const auto d = static_cast<std::size_t>(c.dim);
  const auto hidden = static_cast<std::size_t>(c.mlp_hidden);
  ModelParams p;
  p.patch_proj = Matrix(d, static_cast<std::size_t>(c.patch_values()));
  p.cls_token = Matrix(1, d);
  p.pos_embed = Matrix(static_cast<std::size_t>(c.num_tokens()), d);
  p.blocks.resize(static_cast<std::size_t>(c.depth));
  for (auto& b : p.blocks) {
    b.ln_temporal = ln_zeros(d);
    b.temporal = attn_zeros(d);
    b.ln_spatial = ln_zeros(d);
    b.spatial = attn_zeros(d);
    b.ln_mlp = ln_zeros(d);
    b.mlp_w1 = Matrix(d, hidden);
    b.mlp_b1 = Matrix(1, hidden);
    b.mlp_w2 = Matrix(hidden, d);
    b.mlp_b2 = Matrix(1, d);
  }
  p.ln_final = ln_zeros(d);
  p.head_w = Matrix(d, static_cast<std::size_t>(c.n_classes));
  p.head_b = Matrix(1, static_cast<std::size_t>(c.n_classes));
  p.imb_w = Matrix(d, 2);
  p.imb_b = Matrix(1, 2);
  return p;
}

ModelParams ModelParams::init(const ModelConfig& c, std::uint64_t seed) {
  ModelParams p = zeros(c);
  Rng rng(seed);
  const auto d = static_cast<std::size_t>(c.dim);
  const auto hidden = static_cast<std::size_t>(c.mlp_hidden);
  xavier(p.patch_proj, static_cast<std::size_t>(c.patch_values()), d, rng);
  fill_uniform(p.cls_token, 0.02, rng);
  fill_uniform(p.pos_embed, 0.02, rng);
  for (auto& b : p.blocks) {
    for (auto* ln : {&b.ln_temporal, &b.ln_spatial, &b.ln_mlp}) ln->gamma.fill(1.0);
    for (auto* a : {&b.temporal, &b.spatial}) {
      for (auto* w : {&a->wq, &a->wk, &a->wv, &a->wo}) xavier(*w, d, d, rng);
    }
    xavier(b.mlp_w1, d, hidden, rng);
    xavier(b.mlp_w2, hidden, d, rng);
  }
  p.ln_final.gamma.fill(1.0);
  xavier(p.head_w, d, static_cast<std::size_t>(c.n_classes), rng);
  return p;
}

std::vector<std::pair<std::string, Matrix*>> ModelParams::named_tensors() {
  std::vector<std::pair<std::string, Matrix*>> out;
  collect(*this, out);
  return out;
}

std::vector<std::pair<std::string, const Matrix*>> ModelParams::named_tensors() const {
  std::vector<std::pair<std::string, const Matrix*>> out;
  collect(*this, out);
  return out;
}

std::size_t ModelParams::num_values() const {
  std::size_t n = 0;
  for (const auto& [name, m] : named_tensors()) n += m->size();
  return n;
}

void ModelParams::set_zero() {
  for (auto& [name, m] : named_tensors()) m->fill(0.0);
}

bool ModelParams::all_finite() const {
  for (const auto& [name, m] : named_tensors()) {
    for (double v : m->flat()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void ModelParams::check_shapes(const ModelConfig& c) const {
  const ModelParams ref = zeros(c);
  const auto mine = named_tensors();
  const auto theirs = ref.named_tensors();
  if (mine.size() != theirs.size()) throw Error(Errc::ShapeMismatch, "parameter count differs from config");
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (!mine[i].second->same_shape(*theirs[i].second)) {
      throw Error(Errc::ShapeMismatch, "tensor " + mine[i].first + " has the wrong shape");
    }
  }
}

}  // namespace bsa::model
