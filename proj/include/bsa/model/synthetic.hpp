#pragma once

#include <cstdint>
#include <vector>

#include "bsa/model/trainer.hpp"

namespace bsa::model {

/// Synthetic motion clips with three classes:
///   0  a bright square translating at constant velocity (wrapping at edges)
///   1  a bright square blinking on and off at a fixed position
///   2  a static noise image with no square
/// Every frame also carries fresh low-amplitude sensor noise.
enum class MotionClass : int { Translating = 0, Blinking = 1, StaticNoise = 2 };

struct MotionDatasetSpec {
  int frames = 8;
  int size = 32;
  int square = 8;
  double sensor_noise = 0.1;
  /// Number of clips per class, indexed by MotionClass.
  std::vector<int> class_counts{200, 200, 200};
  std::uint64_t seed = 0;
};

/// Clips in a seeded random order.
std::vector<LabeledClip> make_motion_dataset(const MotionDatasetSpec& spec);

/// One clip of the given class drawn from `rng`.
ClipTensor make_motion_clip(MotionClass cls, const MotionDatasetSpec& spec, std::uint64_t clip_seed);

}  // namespace bsa::model
