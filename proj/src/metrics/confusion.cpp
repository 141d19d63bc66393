#include "bsa/metrics/confusion.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "bsa/core/error.hpp"

namespace bsa::metrics {

std::int64_t ConfusionMatrix::total() const { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

std::int64_t ConfusionMatrix::row_total(int label) const {
  std::int64_t s = 0;
  for (int j = 0; j < n; ++j) s += at(label, j);
  return s;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& preds, const std::vector<int>& labels, int n_classes) {
  if (preds.size() != labels.size()) {
    throw Error(Errc::LengthMismatch,
                std::to_string(preds.size()) + " predictions vs " + std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix m(n_classes);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= n_classes || preds[i] < 0 || preds[i] >= n_classes) {
      throw Error(Errc::OutOfRange, "class index out of range at position " + std::to_string(i));
    }
    ++m.at(labels[i], preds[i]);
  }
  return m;
}

ConfusionMatrix aggregate_folds(const std::vector<ConfusionMatrix>& folds) {
  if (folds.empty()) return ConfusionMatrix{};
  ConfusionMatrix out(folds.front().n);
  for (const auto& f : folds) {
    if (f.n != out.n) throw Error(Errc::ShapeMismatch, "confusion matrices of different sizes");
    for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += f.counts[i];
  }
  return out;
}

std::vector<double> per_class_recall(const ConfusionMatrix& m) {
  std::vector<double> r(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) {
    const auto t = m.row_total(i);
    r[static_cast<std::size_t>(i)] =
        t == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(m.at(i, i)) / static_cast<double>(t);
  }
  return r;
}

}  // namespace bsa::metrics
