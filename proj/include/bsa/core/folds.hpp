#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bsa/core/manifest.hpp"

namespace bsa {

struct FoldAssignment {
  std::map<std::string, int> fold_of_video;
  std::uint64_t seed = 0;
  int k = 10;

  int fold_of(const std::string& video_id) const;
  /// Number of clips per fold for the given manifest.
  std::vector<std::int64_t> clip_counts(const Manifest& m) const;
};

/// Video-level split: the sorted distinct video ids are shuffled with a
/// generator seeded by `seed`, then dealt round-robin into `k` folds.
/// Throws Error(TooFewVideos) when there are fewer than k videos,
/// Error(InvalidArgument) when k < 2.
FoldAssignment split_folds(const Manifest& manifest, int k, std::uint64_t seed);

/// {"seed": S, "k": K, "folds": {"video_id": fold, ...}}
void write_folds(std::ostream& out, const FoldAssignment& f);
FoldAssignment read_folds(std::istream& in);

}  // namespace bsa
