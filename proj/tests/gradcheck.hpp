#pragma once

// Central-difference gradient check shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <string>

#include "bsa/core/random.hpp"
#include "bsa/model/trainer.hpp"

namespace bsa::testkit {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_tensor;
  std::size_t checked = 0;
};

/// Perturbs every parameter with the fourth-order stencil
///   (-f(x+2h) + 8 f(x+h) - 8 f(x-h) + f(x-2h)) / 12h
/// and compares with the analytic gradient. Relative error is
/// |a - n| / max(|a|, |n|, floor).
inline GradCheckResult gradient_check(const model::LabeledClip& sample, model::ModelParams params,
                                      const model::ModelConfig& c, int epoch, int anneal, double h = 1e-4,
                                      double floor = 1e-6) {
  auto grads = model::ModelParams::zeros(c);
  model::sample_loss_and_grad(sample, params, c, epoch, anneal, grads);
  const auto analytic = grads.named_tensors();
  auto named = params.named_tensors();

  GradCheckResult r;
  for (std::size_t t = 0; t < named.size(); ++t) {
    auto vals = named[t].second->flat();
    const auto g = analytic[t].second->flat();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double x0 = vals[i];
      auto f = [&](double dx) {
        vals[i] = x0 + dx;
        return model::sample_loss(sample, params, c, epoch, anneal);
      };
      const double num = (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
      vals[i] = x0;
      const double denom = std::max({std::abs(g[i]), std::abs(num), floor});
      const double rel = std::abs(g[i] - num) / denom;
      if (rel > r.max_rel_error) {
        r.max_rel_error = rel;
        r.worst_tensor = named[t].first + "[" + std::to_string(i) + "]";
      }
      ++r.checked;
    }
  }
  return r;
}

/// Random clip plus randomized imbalance head so every branch carries gradient.
inline std::pair<model::LabeledClip, model::ModelParams> gradcheck_fixture(const model::ModelConfig& c,
                                                                           std::uint64_t seed, int label) {
  model::LabeledClip s{model::ClipTensor(c.frames, c.height, c.width), label};
  Rng rng(seed);
  for (auto& v : s.clip.values()) v = uniform01(rng);
  auto p = model::ModelParams::init(c, derive_seed(seed, 1));
  for (auto& v : p.imb_w.flat()) v = uniform(rng, -0.3, 0.3);
  for (auto& v : p.imb_b.flat()) v = uniform(rng, -0.3, 0.3);
  for (auto& v : p.head_b.flat()) v = uniform(rng, -0.2, 0.2);
  return {std::move(s), std::move(p)};
}

}  // namespace bsa::testkit
