#include "bsa/planning/accuracy.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include "bsa/core/error.hpp"

namespace bsa::planning {
namespace {

void require(const PredictionLog& log, int k) {
  if (log.empty()) throw Error(Errc::EmptyLog, "prediction log has no entries");
  if (k < 1) throw Error(Errc::OutOfRange, "k must be at least 1");
}

template <class Hit>
double local(const PredictionLog& log, int k, Hit hit) {
  require(log, k);
  std::size_t n = 0;
  for (const auto& e : log.entries()) n += hit(e, k);
  return static_cast<double>(n) / static_cast<double>(log.size());
}

template <class Hit>
double global(const PredictionLog& log, int k, Hit hit) {
  require(log, k);
  std::map<std::string, std::pair<std::size_t, std::size_t>> per;  // hits, count
  for (const auto& e : log.entries()) {
    auto& c = per[e.context_id];
    c.first += hit(e, k);
    ++c.second;
  }
  double sum = 0.0;
  for (const auto& [id, c] : per) sum += static_cast<double>(c.first) / static_cast<double>(c.second);
  return sum / static_cast<double>(per.size());
}

bool in_top(const LogEntry& e, int k, ActionClass a) {
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(k), e.predictions.size());
  return std::find(e.predictions.begin(), e.predictions.begin() + static_cast<std::ptrdiff_t>(n), a) !=
         e.predictions.begin() + static_cast<std::ptrdiff_t>(n);
}

}  // namespace

bool strict_hit(const LogEntry& e, int k) { return in_top(e, k, e.next); }

bool relaxed_hit(const LogEntry& e, int k) { return in_top(e, k, e.next) || (e.next2 && in_top(e, k, *e.next2)); }

double s_local_acc(const PredictionLog& log, int k) { return local(log, k, strict_hit); }
double s_global_acc(const PredictionLog& log, int k) { return global(log, k, strict_hit); }
double r_local_acc(const PredictionLog& log, int k) { return local(log, k, relaxed_hit); }
double r_global_acc(const PredictionLog& log, int k) { return global(log, k, relaxed_hit); }

AccuracyTable accuracy_table(const PredictionLog& log) {
  AccuracyTable t;
  for (int k = 1; k <= 3; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    t.v[0][i] = s_local_acc(log, k);
    t.v[1][i] = s_global_acc(log, k);
    t.v[2][i] = r_local_acc(log, k);
    t.v[3][i] = r_global_acc(log, k);
  }
  return t;
}

void write_accuracy_csv(std::ostream& out, const AccuracyTable& t) {
  static const char* names[4] = {"S-LocalAcc", "S-GlobalAcc", "R-LocalAcc", "R-GlobalAcc"};
  out << "metric,top1,top2,top3\n";
  for (std::size_t m = 0; m < 4; ++m) {
    out << names[m];
    for (double v : t.v[m]) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ",%.6f", v);
      out << buf;
    }
    out << '\n';
  }
}

SurgeonMatch surgeon_match_metrics(const PredictionLog& log, const std::vector<std::vector<ActionClass>>& choices) {
  if (log.empty()) throw Error(Errc::EmptyLog, "prediction log has no entries");
  if (choices.size() != log.size()) {
    throw Error(Errc::AlignmentError, std::to_string(choices.size()) + " surgeon choices for " +
                                          std::to_string(log.size()) + " log entries");
  }
  SurgeonMatch m;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const auto& c = choices[i];
    if (c.empty()) throw Error(Errc::AlignmentError, "no surgeon choice for entry " + std::to_string(i));
    const auto& p = log.entries()[i].predictions;
    if (p.empty()) continue;
    const auto n = std::min<std::size_t>(3, c.size());
    const auto cend = c.begin() + static_cast<std::ptrdiff_t>(n);
    m.top1_match += p[0] == c[0];
    m.top1_any_match += std::find(c.begin(), cend, p[0]) != cend;
    const auto pn = std::min<std::size_t>(3, p.size());
    m.top3_inclusion += std::any_of(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(pn),
                                    [&](ActionClass a) { return std::find(c.begin(), cend, a) != cend; });
  }
  const double n = static_cast<double>(log.size());
  m.top1_match /= n;
  m.top1_any_match /= n;
  m.top3_inclusion /= n;
  return m;
}

}  // namespace bsa::planning
