#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "bsa/planning/runner.hpp"

namespace bsa::planning {

// A sample is strictly correct at k when the true next action is among the
// first k predictions, and relaxed-correct when any of them is the next or
// the one after (only the next at a context tail). Local accuracy pools
// samples; global accuracy averages the per-context means.
// All four throw Error(EmptyLog) for an empty log and Error(OutOfRange) for
// k < 1.
double s_local_acc(const PredictionLog& log, int k);
double s_global_acc(const PredictionLog& log, int k);
double r_local_acc(const PredictionLog& log, int k);
double r_global_acc(const PredictionLog& log, int k);

bool strict_hit(const LogEntry& e, int k);
bool relaxed_hit(const LogEntry& e, int k);

struct AccuracyTable {
  // [metric][k-1], metric order: S-Local, S-Global, R-Local, R-Global
  std::array<std::array<double, 3>, 4> v{};
};

AccuracyTable accuracy_table(const PredictionLog& log);

// metric,top1,top2,top3 with one row each for S-LocalAcc, S-GlobalAcc,
// R-LocalAcc, R-GlobalAcc.
void write_accuracy_csv(std::ostream& out, const AccuracyTable& t);

struct SurgeonMatch {
  double top1_match = 0.0;      // model's first == surgeon's first
  double top1_any_match = 0.0;  // model's first in the surgeon's set
  double top3_inclusion = 0.0;  // the two sets intersect
};

/// `choices[i]` holds up to three surgeon picks for log entry i.
/// Throws Error(AlignmentError) for a count mismatch or an empty choice list,
/// Error(EmptyLog) for an empty log.
SurgeonMatch surgeon_match_metrics(const PredictionLog& log, const std::vector<std::vector<ActionClass>>& choices);

}  // namespace bsa::planning
