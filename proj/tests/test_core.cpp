#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "bsa/core/action.hpp"
#include "bsa/core/error.hpp"
#include "bsa/core/folds.hpp"
#include "bsa/core/frame_sampling.hpp"
#include "bsa/core/manifest.hpp"
#include "bsa/core/random.hpp"
#include "bsa/core/validation.hpp"

using namespace bsa;

namespace {

ClipRecord clip(std::string id, std::string video, double start, double end,
                ActionClass a = ActionClass::Dissection, SurgeryType s = SurgeryType::Cholecystectomy) {
  ClipRecord r;
  r.clip_id = std::move(id);
  r.video_id = std::move(video);
  r.start_s = start;
  r.end_s = end;
  r.action = a;
  r.surgery_type = s;
  r.source = "test";
  return r;
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no bsa::Error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(Action, AlphabeticalCoding) {
  EXPECT_EQ(to_index(ActionClass::Aspiration), 0);
  EXPECT_EQ(to_index(ActionClass::TissueRetraction), 9);
  for (std::size_t i = 1; i < kAllActions.size(); ++i) {
    EXPECT_LT(action_name(kAllActions[i - 1]), action_name(kAllActions[i]));
  }
}

TEST(Action, ParseRoundTrip) {
  for (auto a : kAllActions) EXPECT_EQ(parse_action(action_name(a)), a);
  EXPECT_FALSE(parse_action("NonAction").has_value());
  EXPECT_EQ(parse_action("NonAction", true), ActionClass::NonAction);
  EXPECT_FALSE(parse_action("dissection").has_value());
  EXPECT_EQ(code_of([] { action_from_index(10); }), Errc::OutOfRange);
  for (auto s : kAllSurgeryTypes) EXPECT_EQ(parse_surgery(surgery_name(s)), s);
}

TEST(Manifest, JsonlRoundTrip) {
  Manifest m;
  m.records = {clip("a", "v1", 0, 5), clip("b", "v2", 3, 9.5, ActionClass::Packaging, SurgeryType::Nephrectomy)};
  m.records[1].co_occurring_retraction = true;
  std::stringstream ss;
  write_manifest(ss, m);
  const auto back = read_manifest(ss);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[1].action, ActionClass::Packaging);
  EXPECT_EQ(back.records[1].surgery_type, SurgeryType::Nephrectomy);
  EXPECT_TRUE(back.records[1].co_occurring_retraction);
  EXPECT_EQ(back.records[1].end_s, 9.5);
  EXPECT_EQ(back.schema_version, kManifestSchemaVersion);
}

TEST(Manifest, RejectsMalformedLines) {
  std::stringstream ss("{\"clip_id\": \"x\"}\n");
  EXPECT_EQ(code_of([&] { read_manifest(ss); }), Errc::MalformedRecord);
  std::stringstream bad_action(
      R"({"clip_id":"x","video_id":"v","surgery_type":"Gastrectomy","action":"Stapling","start_s":0,"end_s":3,"fps_native":25,"co_occurring_retraction":false,"source":"s"})");
  EXPECT_EQ(code_of([&] { read_manifest(bad_action); }), Errc::MalformedRecord);
}

TEST(Manifest, CheckCatchesDuplicatesAndMixedVideos) {
  Manifest m;
  m.records = {clip("a", "v1", 0, 5), clip("a", "v2", 0, 5)};
  EXPECT_EQ(code_of([&] { m.check(); }), Errc::InvalidManifest);
  m.records = {clip("a", "v1", 0, 5), clip("b", "v1", 0, 5, ActionClass::Dissection, SurgeryType::Gastrectomy)};
  EXPECT_EQ(code_of([&] { m.check(); }), Errc::InvalidManifest);
}

TEST(Manifest, HistogramTotals) {
  Manifest m;
  m.records = {clip("a", "v1", 0, 5), clip("b", "v1", 0, 5),
               clip("c", "v2", 0, 5, ActionClass::Clipping, SurgeryType::Gastrectomy)};
  const auto h = class_histogram(m);
  EXPECT_EQ(h.count(ActionClass::Dissection, SurgeryType::Cholecystectomy), 2);
  EXPECT_EQ(h.action_total(ActionClass::Clipping), 1);
  EXPECT_EQ(h.surgery_total(SurgeryType::Gastrectomy), 1);
  EXPECT_EQ(h.total(), 3);
}

TEST(Validation, DurationBounds) {
  EXPECT_TRUE(validate_clip(clip("a", "v", 0, 2.0)).empty());
  EXPECT_TRUE(validate_clip(clip("a", "v", 0, 40.0)).empty());
  auto v = validate_clip(clip("a", "v", 0, 1.5));
  EXPECT_NE(std::find(v.begin(), v.end(), Violation::DurationOutOfRange), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), Violation::TooShortAction), v.end());
  v = validate_clip(clip("a", "v", 0, 40.5));
  EXPECT_EQ(v, std::vector<Violation>{Violation::DurationOutOfRange});
}

TEST(Validation, RetractionCannotCoOccurWithItself) {
  auto r = clip("a", "v", 0, 5, ActionClass::TissueRetraction);
  r.co_occurring_retraction = true;
  EXPECT_EQ(validate_clip(r), std::vector<Violation>{Violation::IllegalCoOccurrence});
  r.action = ActionClass::Dissection;
  EXPECT_TRUE(validate_clip(r).empty());
}

TEST(Validation, MalformedTimes) {
  EXPECT_EQ(code_of([] { validate_clip(clip("a", "v", 5, 5)); }), Errc::MalformedRecord);
  auto r = clip("a", "v", 0, 5);
  r.fps_native = 0;
  EXPECT_EQ(code_of([&] { validate_clip(r); }), Errc::MalformedRecord);
}

TEST(FrameSampling, ShortClipLoops) {
  const auto p = plan_frame_indices(33, SamplingMode::Infer);
  const std::vector<int> expected{1, 5, 9, 13, 17, 21, 25, 29, 33, 4, 8, 12, 16, 20, 24, 28};
  EXPECT_EQ(p.indices, expected);
}

TEST(FrameSampling, ExactlySixtyFour) {
  const auto p = plan_frame_indices(64, SamplingMode::Infer);
  for (int k = 0; k < 16; ++k) EXPECT_EQ(p.indices[static_cast<std::size_t>(k)], 1 + 4 * k);
}

TEST(FrameSampling, LongClipCentered) {
  const auto p = plan_frame_indices(100, SamplingMode::Infer);
  EXPECT_EQ(p.indices.front(), 19);  // floor(36/2) + 1
  EXPECT_EQ(p.indices.back(), 19 + 60);
}

TEST(FrameSampling, PropertiesOverAllLengths) {
  for (int n = 2; n <= 300; ++n) {
    for (auto mode : {SamplingMode::Infer, SamplingMode::Train}) {
      const auto p = plan_frame_indices(n, mode, static_cast<std::uint64_t>(n));
      ASSERT_EQ(p.indices.size(), 16u);
      for (int i : p.indices) {
        ASSERT_GE(i, 1);
        ASSERT_LE(i, n);
      }
      if (n >= 64) {
        for (std::size_t k = 1; k < 16; ++k) ASSERT_EQ(p.indices[k] - p.indices[k - 1], 4);
      }
    }
  }
}

TEST(FrameSampling, TrainingIsSeeded) {
  const auto a = plan_frame_indices(500, SamplingMode::Train, 7);
  const auto b = plan_frame_indices(500, SamplingMode::Train, 7);
  EXPECT_EQ(a.indices, b.indices);
  std::set<int> starts;
  for (std::uint64_t s = 0; s < 50; ++s) starts.insert(plan_frame_indices(500, SamplingMode::Train, s).indices[0]);
  EXPECT_GT(starts.size(), 10u);
}

TEST(FrameSampling, TooShort) {
  EXPECT_EQ(code_of([] { plan_frame_indices(1, SamplingMode::Infer); }), Errc::ClipTooShort);
}

namespace {

Manifest many_videos(int videos, int clips_per_video) {
  Manifest m;
  for (int v = 0; v < videos; ++v)
    for (int c = 0; c < clips_per_video; ++c)
      m.records.push_back(clip("c" + std::to_string(v) + "_" + std::to_string(c), "v" + std::to_string(v), 0, 5));
  return m;
}

}  // namespace

TEST(Folds, VideosNeverSplit) {
  const auto m = many_videos(23, 3);
  const auto f = split_folds(m, 5, 42);
  EXPECT_EQ(f.fold_of_video.size(), 23u);
  std::vector<int> per(5, 0);
  for (const auto& [v, k] : f.fold_of_video) {
    ASSERT_GE(k, 0);
    ASSERT_LT(k, 5);
    ++per[static_cast<std::size_t>(k)];
  }
  EXPECT_EQ(*std::max_element(per.begin(), per.end()) - *std::min_element(per.begin(), per.end()), 1);
  const auto counts = f.clip_counts(m);
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), 69);
}

TEST(Folds, DeterministicAndSeedSensitive) {
  const auto m = many_videos(30, 1);
  EXPECT_EQ(split_folds(m, 10, 1).fold_of_video, split_folds(m, 10, 1).fold_of_video);
  EXPECT_NE(split_folds(m, 10, 1).fold_of_video, split_folds(m, 10, 2).fold_of_video);
}

TEST(Folds, OrderOfRecordsDoesNotMatter) {
  auto m = many_videos(12, 2);
  const auto a = split_folds(m, 4, 9);
  std::reverse(m.records.begin(), m.records.end());
  EXPECT_EQ(a.fold_of_video, split_folds(m, 4, 9).fold_of_video);
}

TEST(Folds, Errors) {
  EXPECT_EQ(code_of([] { split_folds(many_videos(3, 1), 5, 0); }), Errc::TooFewVideos);
  EXPECT_EQ(code_of([] { split_folds(many_videos(3, 1), 1, 0); }), Errc::InvalidArgument);
}

TEST(Folds, JsonRoundTrip) {
  const auto f = split_folds(many_videos(8, 1), 4, 3);
  std::stringstream ss;
  write_folds(ss, f);
  const auto back = read_folds(ss);
  EXPECT_EQ(back.fold_of_video, f.fold_of_video);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_EQ(back.k, 4);
}

TEST(Random, UniformIndexInRange) {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[uniform_index(rng, 7)];
  for (int h : hits) EXPECT_GT(h, 850);
}

TEST(Random, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}
