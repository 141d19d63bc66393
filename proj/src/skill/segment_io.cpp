#include "bsa/skill/segment_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"
#include "bsa/core/manifest.hpp"

namespace bsa::skill {

using nlohmann::json;

ActionBarcode SegmentFile::barcode(const std::string& video_id) const {
  auto it = by_video.find(video_id);
  if (it == by_video.end()) throw Error(Errc::InvalidArgument, "no segments for video " + video_id);
  double total = 0.0;
  if (auto d = durations.find(video_id); d != durations.end()) {
    total = d->second;
  } else {
    for (const auto& s : it->second) total = std::max(total, s.end_s);
  }
  return build_barcode(it->second, total);
}

SegmentFile read_segments(std::istream& in) {
  SegmentFile f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(Errc::MalformedRecord, "segments line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.is_object() && !j.contains("clip_id")) {
      if (j.contains("durations")) {
        for (const auto& [k, v] : j["durations"].items()) f.durations[k] = v.get<double>();
      }
      continue;
    }
    const auto r = record_from_json(j, true);
    f.by_video[r.video_id].push_back({r.action, r.start_s, r.end_s});
  }
  return f;
}

SegmentFile read_segments_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open segments file " + path);
  return read_segments(in);
}

}  // namespace bsa::skill
