#pragma once

#include <cstdint>
#include <vector>

namespace bsa {

enum class SamplingMode { Train, Infer };

inline constexpr int kSampledFrames = 16;
inline constexpr int kFrameInterval = 4;
inline constexpr int kSamplingWindow = kSampledFrames * kFrameInterval;  // 64

/// Sixteen one-based frame indices into a clip's 1 fps stream.
struct FrameIndexPlan {
  std::vector<int> indices;
  SamplingMode mode = SamplingMode::Infer;
};

/// Clips shorter than 64 frames are looped cyclically to 64 frames before
/// taking every 4th frame from position 1. Longer clips use a 64-frame window
/// starting at floor((n-64)/2)+1 for inference, or at a seeded uniform start
/// for training. Throws Error(ClipTooShort) when n < 2.
FrameIndexPlan plan_frame_indices(int n_frames_1fps, SamplingMode mode, std::uint64_t seed = 0);

}  // namespace bsa
