#include "bsa/core/validation.hpp"

#include <cmath>

#include "bsa/core/error.hpp"

namespace bsa {

std::string_view violation_name(Violation v) noexcept {
  switch (v) {
    case Violation::DurationOutOfRange: return "DurationOutOfRange";
    case Violation::TooShortAction: return "TooShortAction";
    case Violation::IllegalCoOccurrence: return "IllegalCoOccurrence";
  }
  return "?";
}

std::vector<Violation> validate_clip(const ClipRecord& r) {
  if (!std::isfinite(r.start_s) || !std::isfinite(r.end_s) || r.start_s < 0.0 || r.end_s <= r.start_s) {
    throw Error(Errc::MalformedRecord, "clip " + r.clip_id + " has end_s <= start_s or a negative start");
  }
  if (!(r.fps_native > 0.0)) throw Error(Errc::MalformedRecord, "clip " + r.clip_id + " has fps_native <= 0");

  std::vector<Violation> out;
  const double d = r.duration_s();
  if (d < kMinClipSeconds || d > kMaxClipSeconds) out.push_back(Violation::DurationOutOfRange);
  if (d < kMinClipSeconds) out.push_back(Violation::TooShortAction);
  if (r.co_occurring_retraction && r.action == ActionClass::TissueRetraction) {
    out.push_back(Violation::IllegalCoOccurrence);
  }
  return out;
}

}  // namespace bsa
