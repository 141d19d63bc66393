#include "bsa/metrics/report.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa::metrics {

EvaluationReport evaluate_scores(const ScoreMatrix& scores, int n_resamples, std::uint64_t seed) {
  if (scores.empty()) throw Error(Errc::EmptyData, "no scores to evaluate");
  scores.check();
  EvaluationReport r;
  r.n_resamples = n_resamples;
  r.seed = seed;
  r.confusion = ConfusionMatrix(scores.n_classes);

  std::vector<SensSpec> kept;
  double auc_sum = 0.0;
  for (int k = 0; k < scores.n_classes; ++k) {
    RocCurve curve;
    try {
      curve = roc_curve_ova(scores, k);
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateClass) continue;
      throw;
    }
    ClassRow row;
    row.cls = k;
    row.name = class_display_name(k, scores.n_classes);
    row.n_pos = curve.n_pos;
    row.n_neg = curve.n_neg;
    row.auroc = bootstrap_ci([k](const ScoreMatrix& s) { return auroc(roc_curve_ova(s, k)); }, scores, n_resamples,
                             derive_seed(seed, static_cast<std::uint64_t>(k)));
    row.youden = youden_threshold(curve);

    // Recount at tau for this class only.
    SensSpec s{0, 0, 0, 0, 0, 0};
    for (const auto& sr : scores.rows) {
      const bool pred = sr.probs[static_cast<std::size_t>(k)] >= row.youden.tau;
      if (sr.label == k) (pred ? s.tp : s.fn) += 1;
      else (pred ? s.fp : s.tn) += 1;
    }
    s.sensitivity = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
    s.specificity = static_cast<double>(s.tn) / static_cast<double>(s.tn + s.fp);
    row.corrected = s;
    kept.push_back(s);
    auc_sum += row.auroc.point;
    r.classes.push_back(std::move(row));
  }
  if (!r.classes.empty()) r.macro_auroc = auc_sum / static_cast<double>(r.classes.size());
  r.macro = macro_average(kept);

  std::map<int, std::vector<std::size_t>> by_fold;
  for (std::size_t i = 0; i < scores.size(); ++i) by_fold[scores.rows[i].fold].push_back(i);
  std::vector<ConfusionMatrix> folds;
  for (const auto& [fold, idx] : by_fold) {
    const auto part = scores.subset(idx);
    folds.push_back(confusion_matrix(part.predictions(), part.labels(), scores.n_classes));
  }
  r.confusion = aggregate_folds(folds);
  return r;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << v;
  return os.str();
}

}  // namespace

void write_class_csv(std::ostream& out, const EvaluationReport& r) {
  out << "class,name,n_pos,n_neg,auroc,auroc_ci_low,auroc_ci_high,youden_j,tau,sensitivity,specificity,"
         "ci_method,n_resamples,seed,flagged\n";
  for (const auto& c : r.classes) {
    out << c.cls << ',' << c.name << ',' << c.n_pos << ',' << c.n_neg << ',' << num(c.auroc.point) << ','
        << num(c.auroc.ci_low) << ',' << num(c.auroc.ci_high) << ',' << num(c.youden.j) << ','
        << num(c.youden.tau) << ',' << num(c.corrected.sensitivity) << ',' << num(c.corrected.specificity) << ','
        << kCiMethod << ',' << c.auroc.n_resamples << ',' << c.auroc.seed << ',' << (c.auroc.flagged ? 1 : 0)
        << '\n';
  }
  out << "macro,macro,,," << num(r.macro_auroc) << ",,,,," << num(r.macro.sensitivity) << ','
      << num(r.macro.specificity) << ',' << kCiMethod << ',' << r.n_resamples << ',' << r.seed << ",0\n";
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& m) {
  out << "label\\pred";
  for (int j = 0; j < m.n; ++j) out << ',' << class_display_name(j, m.n);
  out << '\n';
  for (int i = 0; i < m.n; ++i) {
    out << class_display_name(i, m.n);
    for (int j = 0; j < m.n; ++j) out << ',' << m.at(i, j);
    out << '\n';
  }
}

void write_group_csv(std::ostream& out, const GroupTable& t, const std::string& statistic_name) {
  const char* key = t.key == GroupKey::Surgery ? "surgery" : "action";
  out << "key,group,n,statistic,value,ci_low,ci_high,ci_method,n_resamples,n_valid,seed,flagged\n";
  auto line = [&](const GroupRow& g) {
    out << key << ',' << g.group << ',' << g.n << ',' << statistic_name << ',' << num(g.metric.point) << ','
        << num(g.metric.ci_low) << ',' << num(g.metric.ci_high) << ',' << kCiMethod << ',' << g.metric.n_resamples
        << ',' << g.metric.n_valid << ',' << g.metric.seed << ',' << (g.metric.flagged ? 1 : 0) << '\n';
  };
  for (const auto& g : t.rows) line(g);
  line(t.macro);
}

}  // namespace bsa::metrics
