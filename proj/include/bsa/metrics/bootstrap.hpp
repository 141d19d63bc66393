#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bsa/metrics/score_matrix.hpp"

namespace bsa::metrics {

struct MetricWithCI {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_resamples = 0;
  int n_valid = 0;  // resamples where the statistic was defined
  std::uint64_t seed = 0;
  // Set when the point lies outside [ci_low, ci_high] or some resamples were
  // dropped. Reported, never an error.
  bool flagged = false;
};

using Statistic = std::function<double(const ScoreMatrix&)>;

inline constexpr int kDefaultResamples = 1000;

/// Percentile bootstrap over rows, 2.5/97.5 bounds (linear interpolation
/// between order statistics). Resample i draws from derive_seed(seed, i), so
/// output is independent of evaluation order. A resample on which the
/// statistic throws bsa::Error is skipped.
/// Throws Error(EmptyData) for an empty input.
MetricWithCI bootstrap_ci(const Statistic& statistic, const ScoreMatrix& data, int n_resamples = kDefaultResamples,
                          std::uint64_t seed = 0, double confidence = 0.95);

/// Same resampling on bare indices 0..n-1.
MetricWithCI bootstrap_ci_indices(const std::function<double(std::span<const std::size_t>)>& statistic, std::size_t n,
                                  int n_resamples = kDefaultResamples, std::uint64_t seed = 0,
                                  double confidence = 0.95);

/// Linear-interpolated quantile of an unsorted sample, q in [0,1].
double percentile(std::vector<double> values, double q);

enum class GroupKey { Action, Surgery };

/// "action" or "surgery"; anything else throws Error(UnknownGroupKey).
GroupKey parse_group_key(const std::string& s);

struct GroupRow {
  std::string group;
  std::size_t n = 0;
  MetricWithCI metric;
};

struct GroupTable {
  GroupKey key = GroupKey::Surgery;
  std::vector<GroupRow> rows;  // sorted by group name
  GroupRow macro;              // unweighted mean of group points, bootstrapped jointly
};

/// Statistic with CI on each group's rows. Surgery groups use the row group
/// field, action groups the label. Throws Error(UnknownGroupKey) when a
/// surgery key is requested and some row has no group.
GroupTable groupwise(const Statistic& statistic, const ScoreMatrix& scores, GroupKey key,
                     int n_resamples = kDefaultResamples, std::uint64_t seed = 0);

}  // namespace bsa::metrics
