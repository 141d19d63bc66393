#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsa::metrics {

struct ScoreRow {
  std::string sample_id;
  int label = 0;
  std::string group;  // surgery type, empty when unknown
  int fold = -1;      // -1 when unknown
  std::vector<double> probs;
};

/// Per-sample class-probability rows with ground-truth labels.
struct ScoreMatrix {
  int n_classes = 10;
  std::vector<ScoreRow> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }

  /// Throws Error(ShapeMismatch) for a row of the wrong width or a row that
  /// does not sum to 1 within `tol`, Error(OutOfRange) for a bad label.
  void check(double tol = 1e-6) const;

  ScoreMatrix subset(const std::vector<std::size_t>& indices) const;
  std::vector<double> class_scores(int k) const;
  std::vector<int> labels() const;
  /// Argmax per row, ties to the lowest index.
  std::vector<int> predictions() const;
};

/// Action name when the scores cover the 10-class taxonomy, "class<k>" otherwise.
std::string class_display_name(int k, int n_classes);

// Line-delimited JSON: {"sample_id", "label", "group", "fold", "p0", ..., "p9"}.
// Labels are written as action names for 10-class scores and as integers
// otherwise; both forms are accepted on input.
ScoreMatrix read_scores(std::istream& in);
ScoreMatrix read_scores_file(const std::string& path);
void write_scores(std::ostream& out, const ScoreMatrix& s);

}  // namespace bsa::metrics
