#include <fstream>

#include "bsa/core/error.hpp"
#include "bsa/agreement/agreement.hpp"
#include "bsa/agreement/rating_io.hpp"
#include "bsa/skill/barcode.hpp"
#include "bsa/skill/segment_io.hpp"
#include "bsa/skill/svg.hpp"
#include "commands.hpp"

namespace bsa::cli {

namespace {

struct AgreeOpts {
  std::string pairs;
};

int run_agree(const AgreeOpts& o) {
  echo_config("agree", {{"pairs", o.pairs}});
  const auto p = agreement::read_ratings_file(o.pairs);
  std::cout << agreement::format_report(agreement::compute_report(p));
  return kOk;
}

struct SkillOpts {
  std::string segments;
  std::string video;
  double duration = 0.0;
  std::string svg;
  std::string rule = "run-minus-one";
};

int run_skill(const SkillOpts& o) {
  echo_config("skill", {{"segments", o.segments}, {"video", o.video}, {"duration", o.duration}, {"svg", o.svg},
                        {"attempt_rule", o.rule}});
  auto file = skill::read_segments_file(o.segments);
  const auto rule = o.rule == "run-as-one" ? skill::AttemptRule::RunAsOne : skill::AttemptRule::RunMinusOne;

  std::vector<std::string> videos;
  if (!o.video.empty()) videos.push_back(o.video);
  else for (const auto& [v, segs] : file.by_video) videos.push_back(v);
  if (videos.empty()) throw Error(Errc::EmptyData, "segments file has no records");
  if (!o.svg.empty() && videos.size() != 1) {
    throw Error(Errc::InvalidArgument, "--svg needs --video when the file holds several timelines");
  }

  for (const auto& v : videos) {
    if (o.duration > 0.0) file.durations[v] = o.duration;
    const auto bc = file.barcode(v);
    const auto r = skill::skill_report(bc, rule);
    nlohmann::json times = nlohmann::json::object();
    for (std::size_t i = 0; i < kNumActions; ++i) {
      if (r.action_time_s[i] > 0.0) times[std::string(action_name(kAllActions[i]))] = r.action_time_s[i];
    }
    std::cout << nlohmann::json{{"video", v},
                                {"multiple_attempts", r.multiple_attempts},
                                {"idle_proportion", r.idle_proportion},
                                {"duration_s", r.duration_s},
                                {"action_time_s", times}}
                     .dump()
              << '\n';
    if (!o.svg.empty()) {
      std::ofstream f(o.svg);
      if (!f) throw Error(Errc::IoError, "cannot write " + o.svg);
      f << skill::render_barcode_svg(bc);
    }
  }
  return kOk;
}

}  // namespace

void register_analysis(CLI::App& app, Action& action) {
  auto a = std::make_shared<AgreeOpts>();
  auto* ag = app.add_subcommand("agree", "Inter-rater agreement for two label columns");
  ag->add_option("--pairs", a->pairs, "Rating file: clip_id,rater_a,rater_b")->required()->check(CLI::ExistingFile);
  ag->callback([a, &action] { action = [a] { return run_agree(*a); }; });

  auto s = std::make_shared<SkillOpts>();
  auto* sk = app.add_subcommand("skill", "Action barcode, attempts and idle proportion");
  sk->add_option("--segments", s->segments, "Segments (manifest schema, JSONL)")->required()->check(CLI::ExistingFile);
  sk->add_option("--video", s->video, "Timeline to analyse; all when omitted");
  sk->add_option("--duration", s->duration, "Total timeline length in seconds (overrides the file)");
  sk->add_option("--svg", s->svg, "Write the barcode SVG here");
  sk->add_option("--attempt-rule", s->rule, "run-minus-one or run-as-one")
      ->check(CLI::IsMember({"run-minus-one", "run-as-one"}))
      ->capture_default_str();
  sk->callback([s, &action] { action = [s] { return run_skill(*s); }; });
}

}  // namespace bsa::cli
