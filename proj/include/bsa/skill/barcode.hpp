#pragma once

#include <array>
#include <vector>

#include "bsa/core/action.hpp"

namespace bsa::skill {

struct TimelineSegment {
  ActionClass action = ActionClass::NonAction;
  double start_s = 0.0;
  double end_s = 0.0;

  double duration_s() const noexcept { return end_s - start_s; }
};

/// Time-ordered, non-overlapping segments covering [0, total_duration_s].
/// Uncovered stretches of the input appear as NonAction segments.
struct ActionBarcode {
  std::vector<TimelineSegment> segments;
  double total_duration_s = 0.0;

  /// Actions in order with NonAction removed.
  std::vector<ActionClass> action_sequence() const;
};

/// Throws Error(MalformedRecord) for end <= start, Error(OverlapError) when two
/// segments overlap, Error(OutOfRange) for a segment outside
/// [0, total_duration_s] or a negative duration.
ActionBarcode build_barcode(std::vector<TimelineSegment> segments, double total_duration_s);

enum class AttemptRule {
  RunMinusOne,  // a run of r identical actions counts r-1
  RunAsOne,     // any run with r >= 2 counts once
};

/// Repeats on the gap-free action sequence: idle gaps between identical
/// actions do not break a run.
int count_multiple_attempts(const ActionBarcode& b, AttemptRule rule = AttemptRule::RunMinusOne);

/// 1 - (time spent in actions) / total. Throws Error(ZeroDuration) when the
/// timeline has no length.
double idle_proportion(const ActionBarcode& b);

struct SkillReport {
  int multiple_attempts = 0;
  double idle_proportion = 0.0;
  double duration_s = 0.0;
  std::array<double, kNumActions> action_time_s{};  // seconds per action
};

SkillReport skill_report(const ActionBarcode& b, AttemptRule rule = AttemptRule::RunMinusOne);

}  // namespace bsa::skill
