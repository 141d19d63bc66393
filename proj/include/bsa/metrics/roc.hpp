#pragma once

#include <span>
#include <vector>

#include "bsa/metrics/score_matrix.hpp"

namespace bsa::metrics {

struct RocPoint {
  double threshold;
  double sensitivity;
  double specificity;
};

/// Operating points at ascending thresholds: every unique score, then a +inf
/// sentinel where nothing is predicted positive. A sample is predicted
/// positive when score >= threshold, so the first point is (sens 1, spec 0).
struct RocCurve {
  std::vector<RocPoint> points;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

/// Binary curve. `positive[i]` is nonzero for positives.
/// Throws Error(DegenerateClass) without both positives and negatives,
/// Error(LengthMismatch) when the spans differ in length.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> positive);

/// One-vs-all curve for class k.
RocCurve roc_curve_ova(const ScoreMatrix& scores, int k);

/// Trapezoidal area over (1 - specificity, sensitivity).
double auroc(const RocCurve& curve);

struct YoudenPoint {
  double tau;
  double j;
  double sensitivity;
  double specificity;
};

/// Maximum of sens + spec - 1. Ties go to the smallest threshold.
YoudenPoint youden_threshold(const RocCurve& curve);

struct SensSpec {
  double sensitivity;
  double specificity;
  std::size_t tp, fn, tn, fp;
};

/// Per-class counts at thresholds[k] (one-vs-all, score >= tau is positive).
std::vector<SensSpec> corrected_sens_spec(const ScoreMatrix& scores, const std::vector<double>& thresholds);

/// Youden threshold for each class in turn.
std::vector<double> youden_thresholds(const ScoreMatrix& scores);

/// Unweighted mean over classes.
SensSpec macro_average(const std::vector<SensSpec>& per_class);

}  // namespace bsa::metrics
