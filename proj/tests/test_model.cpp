#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"
#include "bsa/model/attention.hpp"
#include "bsa/model/checkpoint.hpp"
#include "bsa/model/evidential.hpp"
#include "bsa/model/layers.hpp"
#include "bsa/model/network.hpp"
#include "bsa/model/optimizer.hpp"
#include "bsa/model/special_functions.hpp"
#include "bsa/model/synthetic.hpp"
#include "bsa/model/trainer.hpp"
#include "gradcheck.hpp"

using namespace bsa;
using namespace bsa::model;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
  Matrix m(r, c);
  for (auto& v : m.flat()) v = uniform(rng, -scale, scale);
  return m;
}

AttentionParams random_attention(std::size_t d, Rng& rng) {
  AttentionParams p;
  for (Matrix* w : {&p.wq, &p.wk, &p.wv, &p.wo}) *w = random_matrix(d, d, rng, 0.5);
  for (Matrix* b : {&p.bq, &p.bk, &p.bv, &p.bo}) *b = random_matrix(1, d, rng, 0.1);
  return p;
}

// Dense multi-head attention over an explicit key set, written directly from
// the definition.
Matrix naive_attention(const Matrix& x, const AttentionParams& p, const std::vector<AttentionGroup>& groups,
                       int heads) {
  const std::size_t n = x.rows(), d = x.cols(), dh = d / static_cast<std::size_t>(heads);
  auto proj = [&](const Matrix& w, const Matrix& b) {
    Matrix y(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double s = b(0, j);
        for (std::size_t l = 0; l < d; ++l) s += x(i, l) * w(l, j);
        y(i, j) = s;
      }
    return y;
  };
  const Matrix q = proj(p.wq, p.bq), k = proj(p.wk, p.bk), v = proj(p.wv, p.bv);
  Matrix concat(n, d);
  for (const auto& g : groups) {
    for (int qi : g.queries) {
      for (int h = 0; h < heads; ++h) {
        const std::size_t off = static_cast<std::size_t>(h) * dh;
        std::vector<double> s;
        for (int kj : g.keys) {
          double dotp = 0;
          for (std::size_t e = 0; e < dh; ++e) dotp += q(qi, off + e) * k(kj, off + e);
          s.push_back(dotp / std::sqrt(static_cast<double>(dh)));
        }
        const double mx = *std::max_element(s.begin(), s.end());
        double z = 0;
        for (auto& e : s) z += (e = std::exp(e - mx));
        for (std::size_t j = 0; j < g.keys.size(); ++j)
          for (std::size_t e = 0; e < dh; ++e) concat(qi, off + e) += s[j] / z * v(g.keys[j], off + e);
      }
    }
  }
  Matrix out(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double s = p.bo(0, j);
      for (std::size_t l = 0; l < d; ++l) s += concat(i, l) * p.wo(l, j);
      out(i, j) = s;
    }
  return out;
}

}  // namespace

TEST(Special, DigammaKnownValues) {
  EXPECT_NEAR(digamma(1.0), -0.57721566490153286, 1e-13);
  EXPECT_NEAR(digamma(0.5), -1.9635100260214235, 1e-13);
  EXPECT_NEAR(digamma(10.0), 2.2517525890667211, 1e-13);
  EXPECT_NEAR(trigamma(1.0), std::numbers::pi * std::numbers::pi / 6, 1e-12);
  // psi(x + 1) = psi(x) + 1/x
  for (double x : {0.3, 1.7, 4.2, 25.0}) EXPECT_NEAR(digamma(x + 1) - digamma(x), 1.0 / x, 1e-12);
}

TEST(Layers, ScalarActivations) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(softplus(50.0), 50.0, 1e-12);
  EXPECT_GE(softplus(-800.0), 0.0);
  EXPECT_NEAR(gelu(1.0), 0.8413447460685429, 1e-12);
  const double h = 1e-6;
  for (double x : {-2.0, -0.3, 0.0, 0.7, 3.0}) EXPECT_NEAR(gelu_grad(x), (gelu(x + h) - gelu(x - h)) / (2 * h), 1e-8);
}

TEST(Layers, LayerNormNormalizesRows) {
  Rng rng(2);
  const Matrix x = random_matrix(4, 9, rng, 3.0);
  LayerNormParams p{Matrix(1, 9, 1.0), Matrix(1, 9, 0.0)};
  Matrix y;
  layer_norm_forward(x, p, 1e-12, y, nullptr);
  for (std::size_t r = 0; r < 4; ++r) {
    double m = 0, v = 0;
    for (double e : y.row(r)) m += e;
    m /= 9;
    for (double e : y.row(r)) v += (e - m) * (e - m);
    EXPECT_NEAR(m, 0.0, 1e-12);
    EXPECT_NEAR(v / 9, 1.0, 1e-9);
  }
}

TEST(Attention, GroupsCoverEveryTokenOnce) {
  const int n = 4, t = 3;
  for (const auto& groups : {temporal_groups(n, t), spatial_groups(n, t)}) {
    std::multiset<int> q;
    for (const auto& g : groups) q.insert(g.queries.begin(), g.queries.end());
    EXPECT_EQ(q.size(), static_cast<std::size_t>(n * t + 1));
    for (int i = 0; i <= n * t; ++i) EXPECT_EQ(q.count(i), 1u);
  }
}

TEST(Attention, NeighborhoodsMatchDefinition) {
  const int n = 4, t = 3;
  for (const auto& g : temporal_groups(n, t)) {
    if (g.queries == std::vector<int>{0}) {
      EXPECT_EQ(g.keys, std::vector<int>{0});
      continue;
    }
    ASSERT_EQ(g.keys.size(), static_cast<std::size_t>(t + 1));
    const int p = (g.queries.front() - 1) % n;
    std::set<int> expect{0};
    for (int f = 0; f < t; ++f) expect.insert(token_index(p, f, n));
    EXPECT_EQ(std::set<int>(g.keys.begin(), g.keys.end()), expect);
  }
  for (const auto& g : spatial_groups(n, t)) {
    if (g.queries == std::vector<int>{0}) {
      EXPECT_EQ(g.keys.size(), static_cast<std::size_t>(n * t + 1));
      continue;
    }
    const int f = (g.queries.front() - 1) / n;
    std::set<int> expect{0};
    for (int p = 0; p < n; ++p) expect.insert(token_index(p, f, n));
    EXPECT_EQ(std::set<int>(g.keys.begin(), g.keys.end()), expect);
  }
}

TEST(Attention, MatchesNaiveImplementation) {
  Rng rng(4);
  const int n = 3, t = 2, heads = 2;
  const std::size_t d = 6;
  const Matrix x = random_matrix(static_cast<std::size_t>(n * t + 1), d, rng);
  const auto p = random_attention(d, rng);
  for (const auto& groups : {temporal_groups(n, t), spatial_groups(n, t)}) {
    Matrix out;
    grouped_attention_forward(x, p, groups, heads, out, nullptr, nullptr);
    const Matrix ref = naive_attention(x, p, groups, heads);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out.flat()[i], ref.flat()[i], 1e-12);
  }
}

TEST(Attention, PatchComparisonsAreNPlusTPlusTwo) {
  const auto c = toy_config(5, 8, 12, 4, 8, 2, 2);  // N = 6, T = 5
  const auto params = ModelParams::init(c, 3);
  ClipTensor clip(c.frames, c.height, c.width);
  ComparisonCounter counter;
  forward(clip, params, c, nullptr, &counter);
  const int n = c.patches_per_frame(), t = c.frames;
  for (int i = 1; i < c.num_tokens(); ++i) EXPECT_EQ(counter.per_token[i], c.depth * (n + t + 2)) << i;
  EXPECT_EQ(counter.per_token[0], c.depth * (1 + n * t + 1));
}

TEST(Evidential, RiskMatchesClosedForm) {
  const std::vector<double> alpha{3.0, 1.5, 1.0, 7.25};
  const int y = 3;
  const double s = 3.0 + 1.5 + 1.0 + 7.25;
  double risk = 0;
  for (int j = 0; j < 4; ++j) {
    const double p = alpha[j] / s, yj = j == y ? 1.0 : 0.0;
    risk += (yj - p) * (yj - p) + p * (1 - p) / (s + 1);
  }
  const auto l = evidential_loss(alpha, y, 0, 10);
  EXPECT_NEAR(l.risk, risk, 1e-14);
  EXPECT_EQ(l.lambda, 0.0);
  EXPECT_NEAR(l.loss, risk, 1e-14);
}

TEST(Evidential, KlZeroForUniformAndNonNegative) {
  const std::vector<double> ones(5, 1.0);
  EXPECT_NEAR(evidential_loss(ones, 2, 10, 10).kl, 0.0, 1e-14);
  // Evidence only on the target is removed before the penalty.
  const std::vector<double> target_only{1.0, 1.0, 9.0, 1.0, 1.0};
  EXPECT_NEAR(evidential_loss(target_only, 2, 10, 10).kl, 0.0, 1e-14);
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> a(5);
    for (auto& v : a) v = 1.0 + uniform(rng, 0.0, 20.0);
    EXPECT_GE(evidential_loss(a, i % 5, 10, 10).kl, -1e-12);
  }
}

TEST(Evidential, GradientMatchesFiniteDifference) {
  std::vector<double> a{2.0, 1.3, 5.5};
  const auto l = evidential_loss(a, 1, 4, 10);
  const double h = 1e-6;
  for (std::size_t j = 0; j < a.size(); ++j) {
    auto up = a, dn = a;
    up[j] += h;
    dn[j] -= h;
    const double num = (evidential_loss(up, 1, 4, 10).loss - evidential_loss(dn, 1, 4, 10).loss) / (2 * h);
    EXPECT_NEAR(l.grad[j], num, 1e-7);
  }
}

TEST(Evidential, AnnealingAndErrors) {
  EXPECT_EQ(kl_annealing(0, 10), 0.0);
  EXPECT_EQ(kl_annealing(5, 10), 0.5);
  EXPECT_EQ(kl_annealing(30, 10), 1.0);
  const std::vector<double> bad{0.5, 2.0};
  EXPECT_THROW(evidential_loss(bad, 0, 0), Error);
  const std::vector<double> ok{1.0, 2.0};
  EXPECT_THROW(evidential_loss(ok, 2, 0), Error);
}

TEST(DualHead, ScalesDominantAndRest) {
  const std::vector<double> e{2.0, 4.0, 0.0};
  const auto o = apply_dual_head(e, 0.5, 1.5, 1);
  EXPECT_EQ(o.alpha, (std::vector<double>{4.0, 3.0, 1.0}));
  EXPECT_NEAR(o.uncertainty, 3.0 / 8.0, 1e-15);
  EXPECT_NEAR(o.probabilities[0], 0.5, 1e-15);
  Matrix w(4, 2), b(1, 2);
  const std::vector<double> theta{1, 2, 3, 4};
  const auto [wp, wc] = imbalance_head(theta, w, b);
  EXPECT_EQ(wp, 1.0);
  EXPECT_EQ(wc, 1.0);
}

TEST(DualHead, AblationIgnoresImbalanceHead) {
  auto c = toy_config(2, 4, 4, 2, 8, 1, 2);
  c.n_classes = 3;
  c.dominant_index = 0;
  auto p = ModelParams::init(c, 5);
  for (auto& v : p.imb_b.flat()) v = 3.0;
  ClipTensor clip(2, 4, 4);
  c.dual_head = true;
  const auto on = forward(clip, p, c);
  EXPECT_GT(on.w_p, 1.5);
  c.dual_head = false;
  const auto off = forward(clip, p, c);
  EXPECT_EQ(off.w_p, 1.0);
  EXPECT_EQ(off.w_c, 1.0);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(off.alpha[k], off.evidence[k] + 1.0);
}

TEST(Network, PatchExtractionLayout) {
  const auto c = toy_config(2, 4, 4, 2, 8, 1, 2);
  ClipTensor clip(2, 4, 4);
  clip.at(1, 2, 3, 1) = 0.75;  // frame 1, patch (1,1), dy 0, dx 1, green
  const Matrix p = extract_patches(clip, c);
  ASSERT_EQ(p.rows(), 8u);
  ASSERT_EQ(p.cols(), 12u);
  EXPECT_EQ(p(1 * 4 + 3, (0 * 2 + 1) * 3 + 1), 0.75);
  double sum = 0;
  for (double v : p.flat()) sum += v;
  EXPECT_EQ(sum, 0.75);
  EXPECT_THROW(extract_patches(ClipTensor(3, 4, 4), c), Error);
}

TEST(Network, ArgmaxTiesGoLow) {
  const std::vector<double> p{0.2, 0.4, 0.4};
  EXPECT_EQ(argmax_lowest(p), 1);
}

TEST(Network, NonFiniteInputIsReported) {
  const auto c = toy_config(2, 4, 4, 2, 8, 1, 2);
  ClipTensor clip(2, 4, 4);
  clip.at(0, 0, 0, 0) = std::nan("");
  try {
    forward(clip, ModelParams::init(c, 1), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFiniteActivation);
  }
}

TEST(Network, SmallGradientCheck) {
  auto c = toy_config(2, 4, 4, 2, 8, 1, 2);
  c.n_classes = 3;
  c.dominant_index = 0;
  c.mlp_hidden = 12;
  auto [sample, params] = testkit::gradcheck_fixture(c, 21, 2);
  const auto r = testkit::gradient_check(sample, params, c, 5, 10);
  EXPECT_GT(r.checked, 500u);
  EXPECT_LT(r.max_rel_error, 1e-4) << r.worst_tensor;
}

TEST(Optimizer, SgdUpdateFormula) {
  std::vector<double> p{1.0, -2.0}, g{0.5, 0.25}, v{0.1, 0.0};
  sgd_update(p, g, v, SgdConfig{0.1, 0.9, 0.01});
  EXPECT_NEAR(v[0], 0.09 + 0.5 + 0.01, 1e-15);
  EXPECT_NEAR(p[0], 1.0 - 0.1 * 0.6, 1e-15);
  EXPECT_NEAR(v[1], 0.25 - 0.02, 1e-15);
  std::vector<double> shorter{1.0};
  EXPECT_THROW(sgd_update(p, shorter, v, SgdConfig{}), Error);
}

TEST(Params, NamedTensorsAndShapes) {
  const auto c = toy_config(2, 4, 4, 2, 8, 2, 2);
  auto p = ModelParams::init(c, 1);
  p.check_shapes(c);
  std::set<std::string> names;
  std::size_t total = 0;
  for (const auto& [name, m] : p.named_tensors()) {
    names.insert(name);
    total += m->size();
  }
  EXPECT_EQ(total, p.num_values());
  EXPECT_TRUE(names.count("blocks.1.spatial.wq"));
  for (double v : p.imb_w.flat()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(p.check_shapes(toy_config(2, 4, 4, 2, 16, 2, 2)), Error);
}

TEST(Checkpoint, RoundTripIsExact) {
  auto c = toy_config(2, 4, 4, 2, 8, 1, 2);
  c.n_classes = 3;
  c.dominant_index = 1;
  Checkpoint ck{kCheckpointVersion, c, ModelParams::init(c, 77), {{"note", "x"}}};
  std::stringstream ss;
  write_checkpoint(ss, ck);
  const auto back = read_checkpoint(ss);
  EXPECT_EQ(back.config.n_classes, 3);
  EXPECT_EQ(back.metadata["note"], "x");
  const auto a = ck.params.named_tensors();
  const auto b = back.params.named_tensors();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(*a[i].second, *b[i].second) << a[i].first;
}

TEST(Checkpoint, RejectsMismatchedTensor) {
  const auto c = toy_config(2, 4, 4, 2, 8, 1, 2);
  Checkpoint ck{kCheckpointVersion, c, ModelParams::init(c, 1), {}};
  std::stringstream ss;
  write_checkpoint(ss, ck);
  auto j = nlohmann::json::parse(ss.str());
  j["config"]["dim"] = 16;
  j["config"]["mlp_hidden"] = 64;
  std::stringstream bad(j.dump());
  EXPECT_THROW(read_checkpoint(bad), Error);
}

TEST(Synthetic, ClassesAndDeterminism) {
  MotionDatasetSpec spec;
  spec.class_counts = {3, 2, 1};
  spec.seed = 4;
  const auto a = make_motion_dataset(spec), b = make_motion_dataset(spec);
  ASSERT_EQ(a.size(), 6u);
  std::vector<int> counts(3, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++counts[static_cast<std::size_t>(a[i].label)];
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_TRUE(std::equal(a[i].clip.values().begin(), a[i].clip.values().end(), b[i].clip.values().begin()));
    for (double v : a[i].clip.values()) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
  EXPECT_EQ(counts, (std::vector<int>{3, 2, 1}));
}

TEST(Trainer, SeededRunsAreIdentical) {
  MotionDatasetSpec spec;
  spec.frames = 2;
  spec.size = 8;
  spec.square = 2;
  spec.class_counts = {4, 4, 4};
  const auto data = make_motion_dataset(spec);
  auto c = toy_config(2, 8, 8, 4, 8, 1, 2);
  c.n_classes = 3;
  c.dominant_index = 0;
  TrainConfig tc;
  tc.epochs = 2;
  tc.batch_size = 4;
  tc.seed = 9;
  const auto r1 = train_toy(data, c, tc), r2 = train_toy(data, c, tc);
  ASSERT_EQ(r1.history.size(), 2u);
  EXPECT_EQ(r1.history[1].mean_loss, r2.history[1].mean_loss);
  EXPECT_EQ(r1.params.head_w, r2.params.head_w);
  tc.seed = 10;
  EXPECT_NE(train_toy(data, c, tc).params.head_w, r1.params.head_w);
}

TEST(Trainer, Errors) {
  const auto c = toy_config(2, 8, 8, 4, 8, 1, 2);
  std::vector<LabeledClip> none;
  EXPECT_THROW(train_toy(none, c, TrainConfig{}), Error);
  std::vector<LabeledClip> bad{{ClipTensor(2, 8, 8), 12}};
  EXPECT_THROW(train_toy(bad, c, TrainConfig{}), Error);
}
