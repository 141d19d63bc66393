#include "bsa/planning/samples.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"

namespace bsa::planning {

using nlohmann::json;

std::string PlanningSample::key() const { return context_id + "/" + std::to_string(t); }

std::vector<std::size_t> uniform_frame_picks(std::size_t m, std::size_t k) {
  std::vector<std::size_t> out;
  if (m == 0 || k == 0) return out;
  if (k == 1) return {m - 1};
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(m - 1) /
                                                        static_cast<double>(k - 1))));
  }
  return out;
}

std::vector<PlanningSample> make_samples(const ContextSequence& ctx, int window) {
  if (window < 1) throw Error(Errc::InvalidArgument, "window must be positive");
  std::vector<PlanningSample> out;
  const int n = static_cast<int>(ctx.clips.size());
  const int hist = window - 1;
  for (int t = hist; t + 1 < n; ++t) {
    const auto& near = ctx.clips[static_cast<std::size_t>(t)];
    PlanningSample s;
    s.context_id = ctx.context_id;
    s.t = t;
    s.surgery_type = ctx.surgery_type;
    for (int i = 0; i < hist && i < static_cast<int>(s.distant.size()); ++i) {
      s.distant[static_cast<std::size_t>(i)] = ctx.clips[static_cast<std::size_t>(t - hist + i)].action;
    }
    s.near_clip_id = near.clip_id;
    s.near_action = near.action;
    if (near.frames.empty()) {
      for (int i = 0; i < kNearFrames; ++i) {
        s.near_frames.push_back({"near clip frame " + std::to_string(i + 1), near.clip_id + "#" + std::to_string(i)});
      }
      s.current_frame = {"current frame", near.clip_id + "#last"};
    } else {
      int i = 0;
      for (auto idx : uniform_frame_picks(near.frames.size(), kNearFrames)) {
        s.near_frames.push_back({"near clip frame " + std::to_string(++i), near.frames[idx]});
      }
      s.current_frame = {"current frame", near.frames.back()};
    }
    s.next = ctx.clips[static_cast<std::size_t>(t + 1)].action;
    if (t + 2 < n) s.next2 = ctx.clips[static_cast<std::size_t>(t + 2)].action;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ContextSequence> read_contexts(std::istream& in) {
  std::vector<ContextSequence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      ContextSequence c;
      c.context_id = j.at("context_id").get<std::string>();
      const auto st = j.at("surgery_type").get<std::string>();
      const auto s = parse_surgery(st);
      if (!s) throw Error(Errc::MalformedRecord, "unknown surgery type " + st);
      c.surgery_type = *s;
      for (const auto& cj : j.at("clips")) {
        ContextClip clip;
        clip.clip_id = cj.at("clip_id").get<std::string>();
        const auto an = cj.at("action").get<std::string>();
        const auto a = parse_action(an);
        if (!a) throw Error(Errc::MalformedRecord, "unknown action " + an);
        clip.action = *a;
        clip.frames = cj.value("frames", std::vector<std::string>{});
        c.clips.push_back(std::move(clip));
      }
      if (c.clips.empty()) throw Error(Errc::MalformedRecord, "context " + c.context_id + " has no clips");
      out.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw Error(Errc::MalformedRecord, "contexts line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ContextSequence> read_contexts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open contexts file " + path);
  return read_contexts(in);
}

void write_contexts(std::ostream& out, const std::vector<ContextSequence>& contexts) {
  for (const auto& c : contexts) {
    json clips = json::array();
    for (const auto& cl : c.clips) {
      clips.push_back({{"clip_id", cl.clip_id}, {"action", std::string(action_name(cl.action))}, {"frames", cl.frames}});
    }
    out << json{{"context_id", c.context_id}, {"surgery_type", std::string(surgery_name(c.surgery_type))},
                {"clips", std::move(clips)}}
               .dump()
        << '\n';
  }
}

}  // namespace bsa::planning
