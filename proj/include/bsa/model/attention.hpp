#pragma once

#include <cstdint>
#include <vector>

#include "bsa/model/params.hpp"
#include "bsa/simd/matrix.hpp"

namespace bsa::model {

/// A set of query tokens that share one key/value neighborhood.
struct AttentionGroup {
  std::vector<int> queries;
  std::vector<int> keys;
};

/// Token layout: index 0 is the class token, patch p of frame t is 1 + t*N + p.
constexpr int token_index(int patch, int frame, int patches_per_frame) noexcept {
  return 1 + frame * patches_per_frame + patch;
}

/// Temporal stage: patch (p,t) attends to (p,0..T-1) and the class token.
/// The class token attends to itself.
std::vector<AttentionGroup> temporal_groups(int patches_per_frame, int frames);
/// Spatial stage: patch (p,t) attends to (0..N-1,t) and the class token.
/// The class token attends to every token.
std::vector<AttentionGroup> spatial_groups(int patches_per_frame, int frames);

/// Instrumentation: number of query-key score evaluations per query token,
/// summed over attention stages (counted once per token, not per head).
struct ComparisonCounter {
  std::vector<std::int64_t> per_token;
  void reset(std::size_t tokens) { per_token.assign(tokens, 0); }
};

struct AttentionCache {
  Matrix input;   // normalized tokens fed to the projections
  Matrix q, k, v;
  Matrix concat;  // per-head outputs before the output projection
  std::vector<Matrix> probs;  // softmax weights, indexed [group * heads + head]
};

/// Multi-head attention restricted to the given neighborhoods. Every token must
/// be a query in exactly one group. `out` is overwritten.
void grouped_attention_forward(const Matrix& x, const AttentionParams& p, const std::vector<AttentionGroup>& groups,
                               int heads, Matrix& out, AttentionCache* cache, ComparisonCounter* counter);

/// Accumulates dx and parameter gradients.
void grouped_attention_backward(const Matrix& dout, const AttentionParams& p,
                                const std::vector<AttentionGroup>& groups, int heads, const AttentionCache& cache,
                                Matrix& dx, AttentionParams& grads);

}  // namespace bsa::model
