#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bsa/metrics/bootstrap.hpp"
#include "bsa/metrics/confusion.hpp"
#include "bsa/metrics/roc.hpp"
#include "bsa/metrics/score_matrix.hpp"

namespace bsa::metrics {

inline constexpr const char* kCiMethod = "percentile-bootstrap";

struct ClassRow {
  int cls = 0;
  std::string name;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  MetricWithCI auroc;
  YoudenPoint youden{};
  SensSpec corrected{};
};

struct EvaluationReport {
  std::vector<ClassRow> classes;
  double macro_auroc = 0.0;
  SensSpec macro{};
  ConfusionMatrix confusion;  // summed over folds when folds are present
  int n_resamples = 0;
  std::uint64_t seed = 0;
};

/// Classes without both positives and negatives are skipped (they have no
/// ROC curve) and left out of the macro averages.
EvaluationReport evaluate_scores(const ScoreMatrix& scores, int n_resamples = kDefaultResamples,
                                 std::uint64_t seed = 0);

// Column order (fixed):
//   class,name,n_pos,n_neg,auroc,auroc_ci_low,auroc_ci_high,youden_j,tau,
//   sensitivity,specificity,ci_method,n_resamples,seed,flagged
// followed by one "macro" row.
void write_class_csv(std::ostream& out, const EvaluationReport& r);

// Header "label\pred" then one column per class name; one row per label.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& m);

// Column order (fixed):
//   key,group,n,statistic,value,ci_low,ci_high,ci_method,n_resamples,n_valid,seed,flagged
// followed by one "macro" row.
void write_group_csv(std::ostream& out, const GroupTable& t, const std::string& statistic_name);

}  // namespace bsa::metrics
