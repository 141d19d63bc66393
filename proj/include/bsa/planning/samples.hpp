#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bsa/core/action.hpp"

namespace bsa::planning {

inline constexpr int kWindow = 5;       // 4 distant actions + the near clip
inline constexpr int kNearFrames = 4;   // frames sent from the near clip

struct ContextClip {
  std::string clip_id;
  ActionClass action = ActionClass::Dissection;  // recognized action
  std::vector<std::string> frames;               // image paths in temporal order, may be empty
};

struct ContextSequence {
  std::string context_id;
  SurgeryType surgery_type = SurgeryType::Cholecystectomy;
  std::vector<ContextClip> clips;
};

struct ImageRef {
  std::string label;
  std::string path;  // file path, or a symbolic reference when no file exists
};

struct PlanningSample {
  std::string context_id;
  int t = 0;  // index of the near clip within the context
  SurgeryType surgery_type = SurgeryType::Cholecystectomy;
  std::array<ActionClass, kWindow - 1> distant{};  // a_{t-4} .. a_{t-1}
  std::string near_clip_id;
  ActionClass near_action = ActionClass::Dissection;
  std::vector<ImageRef> near_frames;
  ImageRef current_frame;
  ActionClass next = ActionClass::Dissection;
  std::optional<ActionClass> next2;  // absent at the context tail

  /// "<context_id>/<t>", unique within a run.
  std::string key() const;
};

/// Sliding window: max(0, n - window) samples. Sample t uses clips t-4..t as
/// history and clip t+1 as the target.
std::vector<PlanningSample> make_samples(const ContextSequence& ctx, int window = kWindow);

/// Evenly spaced indices i*(m-1)/(k-1), rounded, for k frames out of m.
std::vector<std::size_t> uniform_frame_picks(std::size_t m, std::size_t k);

// One context per line:
//   {"context_id": "...", "surgery_type": "Cholecystectomy",
//    "clips": [{"clip_id": "...", "action": "Dissection", "frames": ["a.png", ...]}, ...]}
std::vector<ContextSequence> read_contexts(std::istream& in);
std::vector<ContextSequence> read_contexts_file(const std::string& path);
void write_contexts(std::ostream& out, const std::vector<ContextSequence>& contexts);

}  // namespace bsa::planning
