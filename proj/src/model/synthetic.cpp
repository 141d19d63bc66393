#include "bsa/model/synthetic.hpp"

#include <algorithm>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa::model {
namespace {

void draw_square(ClipTensor& clip, int t, int y0, int x0, int side, const double (&rgb)[3]) {
  for (int dy = 0; dy < side; ++dy) {
    for (int dx = 0; dx < side; ++dx) {
      const int y = ((y0 + dy) % clip.height() + clip.height()) % clip.height();
      const int x = ((x0 + dx) % clip.width() + clip.width()) % clip.width();
      for (int ch = 0; ch < 3; ++ch) clip.at(t, y, x, ch) = rgb[ch];
    }
  }
}

}  // namespace

ClipTensor make_motion_clip(MotionClass cls, const MotionDatasetSpec& spec, std::uint64_t clip_seed) {
  Rng rng(clip_seed);
  ClipTensor clip(spec.frames, spec.size, spec.size);
  for (double& v : clip.values()) v = spec.sensor_noise * uniform01(rng);

  const double rgb[3] = {uniform(rng, 0.6, 1.0), uniform(rng, 0.6, 1.0), uniform(rng, 0.6, 1.0)};
  const int y0 = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(spec.size)));
  const int x0 = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(spec.size)));

  switch (cls) {
    case MotionClass::Translating: {
      static constexpr int kVel[8][2] = {{3, 0}, {-3, 0}, {0, 3}, {0, -3}, {2, 2}, {2, -2}, {-2, 2}, {-2, -2}};
      const auto& v = kVel[uniform_index(rng, 8)];
      for (int t = 0; t < spec.frames; ++t) draw_square(clip, t, y0 + v[0] * t, x0 + v[1] * t, spec.square, rgb);
      break;
    }
    case MotionClass::Blinking: {
      const int phase = static_cast<int>(uniform_index(rng, 2));
      for (int t = 0; t < spec.frames; ++t) {
        if (t % 2 == phase) draw_square(clip, t, y0, x0, spec.square, rgb);
      }
      break;
    }
    case MotionClass::StaticNoise: {
      std::vector<double> still(static_cast<std::size_t>(spec.size) * spec.size * 3);
      for (double& v : still) v = uniform01(rng);
      for (int t = 0; t < spec.frames; ++t) {
        std::size_t i = 0;
        for (int y = 0; y < spec.size; ++y)
          for (int x = 0; x < spec.size; ++x)
            for (int ch = 0; ch < 3; ++ch) {
              clip.at(t, y, x, ch) = std::min(1.0, still[i++] + clip.at(t, y, x, ch));
            }
      }
      break;
    }
  }
  return clip;
}

std::vector<LabeledClip> make_motion_dataset(const MotionDatasetSpec& spec) {
  if (spec.class_counts.size() != 3) throw Error(Errc::InvalidArgument, "motion dataset needs three class counts");
  std::vector<int> labels;
  for (int cls = 0; cls < 3; ++cls) labels.insert(labels.end(), static_cast<std::size_t>(spec.class_counts[static_cast<std::size_t>(cls)]), cls);
  Rng rng(derive_seed(spec.seed, 0));
  shuffle(std::span<int>(labels), rng);

  std::vector<LabeledClip> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.push_back({make_motion_clip(static_cast<MotionClass>(labels[i]), spec, derive_seed(spec.seed, 1 + i)), labels[i]});
  }
  return out;
}

}  // namespace bsa::model
