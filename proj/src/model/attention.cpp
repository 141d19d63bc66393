#include "bsa/model/attention.hpp"

#include <algorithm>
#include <cmath>

#include "bsa/core/error.hpp"
#include "bsa/model/layers.hpp"
#include "bsa/simd/kernels.hpp"

namespace bsa::model {

std::vector<AttentionGroup> temporal_groups(int n, int frames) {
  std::vector<AttentionGroup> groups;
  groups.push_back({{0}, {0}});
  for (int p = 0; p < n; ++p) {
    AttentionGroup g;
    g.keys.push_back(0);
    for (int t = 0; t < frames; ++t) {
      g.queries.push_back(token_index(p, t, n));
      g.keys.push_back(token_index(p, t, n));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<AttentionGroup> spatial_groups(int n, int frames) {
  std::vector<AttentionGroup> groups;
  AttentionGroup cls{{0}, {}};
  for (int i = 0; i < n * frames + 1; ++i) cls.keys.push_back(i);
  groups.push_back(std::move(cls));
  for (int t = 0; t < frames; ++t) {
    AttentionGroup g;
    g.keys.push_back(0);
    for (int p = 0; p < n; ++p) {
      g.queries.push_back(token_index(p, t, n));
      g.keys.push_back(token_index(p, t, n));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

namespace {

// Copies columns [col, col+width) of the listed rows into a dense block.
void gather(const Matrix& src, const std::vector<int>& rows, std::size_t col, std::size_t width, Matrix& dst) {
  dst.resize(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = src.row(static_cast<std::size_t>(rows[i])).subspan(col, width);
    std::copy(r.begin(), r.end(), dst.row(i).begin());
  }
}

void scatter_add(const Matrix& src, const std::vector<int>& rows, std::size_t col, Matrix& dst) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    simd::add(src.row(i), dst.row(static_cast<std::size_t>(rows[i])).subspan(col, src.cols()));
  }
}

void softmax_rows(Matrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto r = s.row(i);
    const double mx = *std::max_element(r.begin(), r.end());
    double sum = 0.0;
    for (double& v : r) {
      v = std::exp(v - mx);
      sum += v;
    }
    simd::scale(1.0 / sum, r);
  }
}

}  // namespace

void grouped_attention_forward(const Matrix& x, const AttentionParams& p, const std::vector<AttentionGroup>& groups,
                               int heads, Matrix& out, AttentionCache* cache, ComparisonCounter* counter) {
  const std::size_t d = x.cols();
  const std::size_t dh = d / static_cast<std::size_t>(heads);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Matrix q, k, v;
  linear_forward(x, p.wq, p.bq, q);
  linear_forward(x, p.wk, p.bk, k);
  linear_forward(x, p.wv, p.bv, v);

  Matrix concat(x.rows(), d);
  std::vector<int> seen(x.rows(), 0);
  if (cache) cache->probs.clear();

  Matrix qg, kg, vg, og;
  for (const auto& g : groups) {
    for (int q_tok : g.queries) ++seen[static_cast<std::size_t>(q_tok)];
    for (int h = 0; h < heads; ++h) {
      const std::size_t col = static_cast<std::size_t>(h) * dh;
      gather(q, g.queries, col, dh, qg);
      gather(k, g.keys, col, dh, kg);
      gather(v, g.keys, col, dh, vg);

      Matrix scores(g.queries.size(), g.keys.size());
      gemm_nt_acc(qg, kg, scores);
      simd::scale(scale, scores.flat());
      if (counter && h == 0) {
        for (int q_tok : g.queries) counter->per_token[static_cast<std::size_t>(q_tok)] += static_cast<std::int64_t>(g.keys.size());
      }
      softmax_rows(scores);

      og.resize(g.queries.size(), dh);
      gemm_acc(scores, vg, og);
      scatter_add(og, g.queries, col, concat);
      if (cache) cache->probs.push_back(std::move(scores));
    }
  }
  for (int s : seen) {
    if (s != 1) throw Error(Errc::ShapeMismatch, "attention groups must cover every token exactly once");
  }

  linear_forward(concat, p.wo, p.bo, out);
  if (cache) {
    cache->input = x;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->concat = std::move(concat);
  }
}

void grouped_attention_backward(const Matrix& dout, const AttentionParams& p,
                                const std::vector<AttentionGroup>& groups, int heads, const AttentionCache& cache,
                                Matrix& dx, AttentionParams& grads) {
  const std::size_t n = dout.rows();
  const std::size_t d = dout.cols();
  const std::size_t dh = d / static_cast<std::size_t>(heads);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Matrix dconcat(n, d);
  linear_backward(cache.concat, p.wo, dout, &dconcat, grads.wo, grads.bo);

  Matrix dq(n, d), dk(n, d), dv(n, d);
  Matrix qg, kg, vg, dog;
  std::size_t slot = 0;
  for (const auto& g : groups) {
    for (int h = 0; h < heads; ++h, ++slot) {
      const std::size_t col = static_cast<std::size_t>(h) * dh;
      const Matrix& prob = cache.probs[slot];
      gather(cache.q, g.queries, col, dh, qg);
      gather(cache.k, g.keys, col, dh, kg);
      gather(cache.v, g.keys, col, dh, vg);
      gather(dconcat, g.queries, col, dh, dog);

      // dP = dO * V^T ; dV = P^T * dO
      Matrix dprob(g.queries.size(), g.keys.size());
      gemm_nt_acc(dog, vg, dprob);
      Matrix dvg(g.keys.size(), dh);
      gemm_tn_acc(prob, dog, dvg);

      // Softmax Jacobian, then the 1/sqrt(dh) scale.
      for (std::size_t i = 0; i < dprob.rows(); ++i) {
        const double inner = simd::dot(dprob.row(i), prob.row(i));
        for (std::size_t j = 0; j < dprob.cols(); ++j) dprob(i, j) = prob(i, j) * (dprob(i, j) - inner) * scale;
      }

      Matrix dqg(g.queries.size(), dh);
      gemm_acc(dprob, kg, dqg);
      Matrix dkg(g.keys.size(), dh);
      gemm_tn_acc(dprob, qg, dkg);

      scatter_add(dqg, g.queries, col, dq);
      scatter_add(dkg, g.keys, col, dk);
      scatter_add(dvg, g.keys, col, dv);
    }
  }

  linear_backward(cache.input, p.wq, dq, &dx, grads.wq, grads.bq);
  linear_backward(cache.input, p.wk, dk, &dx, grads.wk, grads.bk);
  linear_backward(cache.input, p.wv, dv, &dx, grads.wv, grads.bv);
}

}  // namespace bsa::model
