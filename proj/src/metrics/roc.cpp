#include "bsa/metrics/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bsa/core/error.hpp"

namespace bsa::metrics {

RocCurve roc_curve(std::span<const double> scores, std::span<const int> positive) {
  if (scores.size() != positive.size()) throw Error(Errc::LengthMismatch, "scores and labels differ in length");
  RocCurve c;
  for (int p : positive) (p ? c.n_pos : c.n_neg) += 1;
  if (c.n_pos == 0 || c.n_neg == 0) throw Error(Errc::DegenerateClass, "class needs both positives and negatives");
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(Errc::DegenerateClass, "non-finite score");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });

  // Sweep upward. At each unique score every remaining sample is >= it.
  std::size_t tp = c.n_pos, fp = c.n_neg;
  const double np = static_cast<double>(c.n_pos), nn = static_cast<double>(c.n_neg);
  std::size_t i = 0;
  while (i < order.size()) {
    const double tau = scores[order[i]];
    c.points.push_back({tau, static_cast<double>(tp) / np, static_cast<double>(c.n_neg - fp) / nn});
    while (i < order.size() && scores[order[i]] == tau) {
      (positive[order[i]] ? tp : fp) -= 1;
      ++i;
    }
  }
  c.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 1.0});
  return c;
}

RocCurve roc_curve_ova(const ScoreMatrix& scores, int k) {
  if (k < 0 || k >= scores.n_classes) throw Error(Errc::OutOfRange, "class index " + std::to_string(k));
  const auto s = scores.class_scores(k);
  std::vector<int> pos;
  pos.reserve(scores.size());
  for (const auto& r : scores.rows) pos.push_back(r.label == k ? 1 : 0);
  try {
    return roc_curve(s, pos);
  } catch (const Error& e) {
    if (e.code() == Errc::DegenerateClass) {
      throw Error(Errc::DegenerateClass, "class " + std::to_string(k) + " needs both positives and negatives");
    }
    throw;
  }
}

double auroc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    // fpr falls as the threshold rises
    const double dx = (1.0 - a.specificity) - (1.0 - b.specificity);
    area += dx * 0.5 * (a.sensitivity + b.sensitivity);
  }
  return area;
}

YoudenPoint youden_threshold(const RocCurve& curve) {
  if (curve.points.empty()) throw Error(Errc::EmptyData, "empty ROC curve");
  YoudenPoint best{curve.points[0].threshold, -1.0, 0.0, 0.0};
  for (const auto& p : curve.points) {
    const double j = p.sensitivity + p.specificity - 1.0;
    if (j > best.j) best = {p.threshold, j, p.sensitivity, p.specificity};
  }
  return best;
}

std::vector<SensSpec> corrected_sens_spec(const ScoreMatrix& scores, const std::vector<double>& thresholds) {
  if (thresholds.size() != static_cast<std::size_t>(scores.n_classes)) {
    throw Error(Errc::LengthMismatch, "need one threshold per class");
  }
  std::vector<SensSpec> out;
  for (int k = 0; k < scores.n_classes; ++k) {
    const double tau = thresholds[static_cast<std::size_t>(k)];
    SensSpec s{0, 0, 0, 0, 0, 0};
    for (const auto& r : scores.rows) {
      const bool pred = r.probs[static_cast<std::size_t>(k)] >= tau;
      if (r.label == k) (pred ? s.tp : s.fn) += 1;
      else (pred ? s.fp : s.tn) += 1;
    }
    if (s.tp + s.fn == 0 || s.tn + s.fp == 0) {
      throw Error(Errc::DegenerateClass, "class " + std::to_string(k) + " needs both positives and negatives");
    }
    s.sensitivity = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
    s.specificity = static_cast<double>(s.tn) / static_cast<double>(s.tn + s.fp);
    out.push_back(s);
  }
  return out;
}

std::vector<double> youden_thresholds(const ScoreMatrix& scores) {
  std::vector<double> t;
  for (int k = 0; k < scores.n_classes; ++k) t.push_back(youden_threshold(roc_curve_ova(scores, k)).tau);
  return t;
}

SensSpec macro_average(const std::vector<SensSpec>& per_class) {
  SensSpec m{0, 0, 0, 0, 0, 0};
  if (per_class.empty()) return m;
  for (const auto& s : per_class) {
    m.sensitivity += s.sensitivity;
    m.specificity += s.specificity;
    m.tp += s.tp;
    m.fn += s.fn;
    m.tn += s.tn;
    m.fp += s.fp;
  }
  m.sensitivity /= static_cast<double>(per_class.size());
  m.specificity /= static_cast<double>(per_class.size());
  return m;
}

}  // namespace bsa::metrics
