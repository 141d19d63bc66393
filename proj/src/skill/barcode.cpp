#include "bsa/skill/barcode.hpp"

#include <algorithm>
#include <string>

#include "bsa/core/error.hpp"

namespace bsa::skill {

std::vector<ActionClass> ActionBarcode::action_sequence() const {
  std::vector<ActionClass> out;
  for (const auto& s : segments) {
    if (s.action != ActionClass::NonAction) out.push_back(s.action);
  }
  return out;
}

ActionBarcode build_barcode(std::vector<TimelineSegment> segments, double total_duration_s) {
  if (!(total_duration_s >= 0.0)) throw Error(Errc::OutOfRange, "total duration must be non-negative");
  for (const auto& s : segments) {
    if (!(s.end_s > s.start_s)) {
      throw Error(Errc::MalformedRecord, "segment [" + std::to_string(s.start_s) + ", " + std::to_string(s.end_s) +
                                             "] has no duration");
    }
    if (s.start_s < 0.0 || s.end_s > total_duration_s) {
      throw Error(Errc::OutOfRange, "segment [" + std::to_string(s.start_s) + ", " + std::to_string(s.end_s) +
                                        "] lies outside [0, " + std::to_string(total_duration_s) + "]");
    }
  }
  std::stable_sort(segments.begin(), segments.end(),
                   [](const auto& a, const auto& b) { return a.start_s < b.start_s; });

  ActionBarcode bc;
  bc.total_duration_s = total_duration_s;
  double cursor = 0.0;
  for (const auto& s : segments) {
    if (s.start_s < cursor) {
      throw Error(Errc::OverlapError, "segment starting at " + std::to_string(s.start_s) + " overlaps one ending at " +
                                          std::to_string(cursor));
    }
    if (s.start_s > cursor) bc.segments.push_back({ActionClass::NonAction, cursor, s.start_s});
    bc.segments.push_back(s);
    cursor = s.end_s;
  }
  if (cursor < total_duration_s) bc.segments.push_back({ActionClass::NonAction, cursor, total_duration_s});
  return bc;
}

int count_multiple_attempts(const ActionBarcode& b, AttemptRule rule) {
  const auto seq = b.action_sequence();
  int count = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    if (i < seq.size() && seq[i] == seq[i - 1]) {
      ++run;
      continue;
    }
    if (run >= 2) count += rule == AttemptRule::RunMinusOne ? static_cast<int>(run - 1) : 1;
    run = 1;
  }
  return count;
}

double idle_proportion(const ActionBarcode& b) {
  if (!(b.total_duration_s > 0.0)) throw Error(Errc::ZeroDuration, "timeline has zero duration");
  double busy = 0.0;
  for (const auto& s : b.segments) {
    if (s.action != ActionClass::NonAction) busy += s.duration_s();
  }
  return std::clamp((b.total_duration_s - busy) / b.total_duration_s, 0.0, 1.0);
}

SkillReport skill_report(const ActionBarcode& b, AttemptRule rule) {
  SkillReport r;
  r.multiple_attempts = count_multiple_attempts(b, rule);
  r.idle_proportion = idle_proportion(b);
  r.duration_s = b.total_duration_s;
  for (const auto& s : b.segments) {
    if (s.action != ActionClass::NonAction) r.action_time_s[static_cast<std::size_t>(s.action)] += s.duration_s();
  }
  return r;
}

}  // namespace bsa::skill
