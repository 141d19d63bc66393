#include "bsa/core/folds.hpp"

#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa {

int FoldAssignment::fold_of(const std::string& video_id) const {
  auto it = fold_of_video.find(video_id);
  if (it == fold_of_video.end()) throw Error(Errc::OutOfRange, "video " + video_id + " has no fold");
  return it->second;
}

std::vector<std::int64_t> FoldAssignment::clip_counts(const Manifest& m) const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  for (const auto& r : m.records) ++counts[static_cast<std::size_t>(fold_of(r.video_id))];
  return counts;
}

FoldAssignment split_folds(const Manifest& manifest, int k, std::uint64_t seed) {
  if (k < 2) throw Error(Errc::InvalidArgument, "k must be >= 2");
  manifest.check();

  std::set<std::string> distinct;
  for (const auto& r : manifest.records) distinct.insert(r.video_id);
  if (distinct.size() < static_cast<std::size_t>(k)) {
    throw Error(Errc::TooFewVideos,
                std::to_string(distinct.size()) + " videos for " + std::to_string(k) + " folds");
  }

  std::vector<std::string> videos(distinct.begin(), distinct.end());
  Rng rng(seed);
  shuffle(std::span<std::string>(videos), rng);

  FoldAssignment out;
  out.seed = seed;
  out.k = k;
  for (std::size_t i = 0; i < videos.size(); ++i) out.fold_of_video[videos[i]] = static_cast<int>(i % k);
  return out;
}

void write_folds(std::ostream& out, const FoldAssignment& f) {
  nlohmann::json folds = nlohmann::json::object();
  for (const auto& [video, fold] : f.fold_of_video) folds[video] = fold;
  out << nlohmann::json{{"seed", f.seed}, {"k", f.k}, {"folds", folds}}.dump(2) << '\n';
}

FoldAssignment read_folds(std::istream& in) {
  try {
    auto j = nlohmann::json::parse(in);
    FoldAssignment f;
    f.seed = j.at("seed").get<std::uint64_t>();
    f.k = j.value("k", 10);
    for (const auto& [video, fold] : j.at("folds").items()) f.fold_of_video[video] = fold.get<int>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("fold file: ") + e.what());
  }
}

}  // namespace bsa
