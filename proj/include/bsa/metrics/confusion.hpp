#pragma once

#include <cstdint>
#include <vector>

namespace bsa::metrics {

/// counts(label, pred), row-major n x n.
struct ConfusionMatrix {
  int n = 10;
  std::vector<std::int64_t> counts;

  explicit ConfusionMatrix(int n_classes = 10)
      : n(n_classes), counts(static_cast<std::size_t>(n_classes) * static_cast<std::size_t>(n_classes), 0) {}

  std::int64_t& at(int label, int pred) { return counts[static_cast<std::size_t>(label * n + pred)]; }
  std::int64_t at(int label, int pred) const { return counts[static_cast<std::size_t>(label * n + pred)]; }
  std::int64_t total() const;
  std::int64_t row_total(int label) const;

  bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws Error(LengthMismatch) for unequal lengths, Error(OutOfRange) for an
/// index outside [0, n_classes).
ConfusionMatrix confusion_matrix(const std::vector<int>& preds, const std::vector<int>& labels, int n_classes = 10);

/// Element-wise sum. Throws Error(ShapeMismatch) for mixed sizes.
ConfusionMatrix aggregate_folds(const std::vector<ConfusionMatrix>& folds);

/// Recall per class (diagonal over row total); NaN for an empty row.
std::vector<double> per_class_recall(const ConfusionMatrix& m);

}  // namespace bsa::metrics
