#include "bsa/core/frame_sampling.hpp"

#include <string>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa {

FrameIndexPlan plan_frame_indices(int n, SamplingMode mode, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::ClipTooShort, "clip has " + std::to_string(n) + " frames at 1 fps, need >= 2");

  FrameIndexPlan plan;
  plan.mode = mode;
  plan.indices.reserve(kSampledFrames);

  if (n < kSamplingWindow) {
    // Position q (0-based) of the looped 64-frame sequence holds frame (q mod n) + 1.
    for (int k = 0; k < kSampledFrames; ++k) plan.indices.push_back((k * kFrameInterval) % n + 1);
    return plan;
  }

  int start = (n - kSamplingWindow) / 2 + 1;
  if (mode == SamplingMode::Train) {
    Rng rng(seed);
    start = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - kSamplingWindow + 1)));
  }
  for (int k = 0; k < kSampledFrames; ++k) plan.indices.push_back(start + k * kFrameInterval);
  return plan;
}

}  // namespace bsa
