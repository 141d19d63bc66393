#include "bsa/metrics/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa::metrics {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(Errc::EmptyData, "percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

// Statistic on resample b for b in [0, n_resamples); NaN where undefined.
std::vector<double> resample_stats(const std::function<double(std::span<const std::size_t>)>& statistic,
                                   std::size_t n, int n_resamples, std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(n_resamples), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> idx(n);
  for (int b = 0; b < n_resamples; ++b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    for (auto& v : idx) v = static_cast<std::size_t>(uniform_index(rng, n));
    try {
      out[static_cast<std::size_t>(b)] = statistic(idx);
    } catch (const Error&) {
      // undefined on this resample (e.g. a class vanished)
    }
  }
  return out;
}

void finish(MetricWithCI& r, const std::vector<double>& per_resample, double confidence) {
  std::vector<double> stats;
  for (double s : per_resample) {
    if (std::isfinite(s)) stats.push_back(s);
  }
  r.n_resamples = static_cast<int>(per_resample.size());
  r.n_valid = static_cast<int>(stats.size());
  if (stats.empty()) {
    r.ci_low = r.ci_high = r.point;
    r.flagged = true;
    return;
  }
  const double tail = (1.0 - confidence) / 2.0;
  r.ci_low = percentile(stats, tail);
  r.ci_high = percentile(std::move(stats), 1.0 - tail);
  r.flagged = r.n_valid < r.n_resamples || r.point < r.ci_low || r.point > r.ci_high;
}

std::function<double(std::span<const std::size_t>)> on_rows(const Statistic& statistic, const ScoreMatrix& data) {
  return [&statistic, &data](std::span<const std::size_t> idx) {
    return statistic(data.subset(std::vector<std::size_t>(idx.begin(), idx.end())));
  };
}

}  // namespace

MetricWithCI bootstrap_ci_indices(const std::function<double(std::span<const std::size_t>)>& statistic, std::size_t n,
                                  int n_resamples, std::uint64_t seed, double confidence) {
  if (n == 0) throw Error(Errc::EmptyData, "bootstrap on empty data");
  if (n_resamples < 1) throw Error(Errc::InvalidArgument, "need at least one resample");
  MetricWithCI r;
  r.seed = seed;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  r.point = statistic(all);
  finish(r, resample_stats(statistic, n, n_resamples, seed), confidence);
  return r;
}

MetricWithCI bootstrap_ci(const Statistic& statistic, const ScoreMatrix& data, int n_resamples, std::uint64_t seed,
                          double confidence) {
  if (data.empty()) throw Error(Errc::EmptyData, "bootstrap on empty data");
  return bootstrap_ci_indices(on_rows(statistic, data), data.size(), n_resamples, seed, confidence);
}

GroupKey parse_group_key(const std::string& s) {
  if (s == "action") return GroupKey::Action;
  if (s == "surgery") return GroupKey::Surgery;
  throw Error(Errc::UnknownGroupKey, "unknown group key '" + s + "' (expected action or surgery)");
}

namespace {

std::string group_of(const ScoreRow& r, GroupKey key, int n_classes) {
  if (key == GroupKey::Surgery) return r.group;
  return class_display_name(r.label, n_classes);
}

}  // namespace

GroupTable groupwise(const Statistic& statistic, const ScoreMatrix& scores, GroupKey key, int n_resamples,
                     std::uint64_t seed) {
  if (scores.empty()) throw Error(Errc::EmptyData, "groupwise on empty data");
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto g = group_of(scores.rows[i], key, scores.n_classes);
    if (g.empty()) throw Error(Errc::UnknownGroupKey, "row " + std::to_string(i) + " has no surgery group");
    members[g].push_back(i);
  }

  if (n_resamples < 1) throw Error(Errc::InvalidArgument, "need at least one resample");

  // Every group resamples with the same per-index seeds, so a lone group
  // reproduces the global bootstrap and the macro row pairs resample b of
  // each group.
  GroupTable t;
  t.key = key;
  std::vector<double> macro(static_cast<std::size_t>(n_resamples), 0.0);
  double point = 0.0;
  for (const auto& [name, idx] : members) {
    const auto part = scores.subset(idx);
    GroupRow row{name, idx.size(), {}};
    row.metric.seed = seed;
    row.metric.point = statistic(part);
    const auto per = resample_stats(on_rows(statistic, part), part.size(), n_resamples, seed);
    finish(row.metric, per, 0.95);
    for (std::size_t b = 0; b < per.size(); ++b) macro[b] += per[b];
    point += row.metric.point;
    t.rows.push_back(std::move(row));
  }
  const double g = static_cast<double>(t.rows.size());
  for (double& v : macro) v /= g;
  t.macro.group = "macro";
  t.macro.n = scores.size();
  t.macro.metric.seed = seed;
  t.macro.metric.point = point / g;
  finish(t.macro.metric, macro, 0.95);
  return t;
}

}  // namespace bsa::metrics
