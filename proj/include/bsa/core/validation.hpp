#pragma once

#include <string_view>
#include <vector>

#include "bsa/core/manifest.hpp"

namespace bsa {

enum class Violation {
  DurationOutOfRange,   // clip shorter than 2 s or longer than 40 s
  TooShortAction,       // the action does not persist for 2 s
  IllegalCoOccurrence,  // retraction flagged as co-occurring with itself
};

inline constexpr double kMinClipSeconds = 2.0;
inline constexpr double kMaxClipSeconds = 40.0;

std::string_view violation_name(Violation v) noexcept;

/// All violated machine-checkable clip criteria, in enum order; empty when the
/// clip is valid. Whether the action happens in the center of the field is a
/// manual review item and is not checked here.
/// Throws Error(MalformedRecord) when end_s <= start_s or fps_native <= 0.
std::vector<Violation> validate_clip(const ClipRecord& record);

}  // namespace bsa
