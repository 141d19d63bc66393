#include "bsa/core/manifest.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"

namespace bsa {

using nlohmann::json;

void Manifest::check() const {
  std::set<std::string> ids;
  std::map<std::string, SurgeryType> surgery_of_video;
  for (const auto& r : records) {
    if (!ids.insert(r.clip_id).second) throw Error(Errc::InvalidManifest, "duplicate clip_id " + r.clip_id);
    auto [it, inserted] = surgery_of_video.emplace(r.video_id, r.surgery_type);
    if (!inserted && it->second != r.surgery_type) {
      throw Error(Errc::InvalidManifest, "video " + r.video_id + " maps to more than one surgery type");
    }
  }
}

json record_to_json(const ClipRecord& r) {
  return json{{"clip_id", r.clip_id},
              {"video_id", r.video_id},
              {"surgery_type", std::string(surgery_name(r.surgery_type))},
              {"action", std::string(action_name(r.action))},
              {"start_s", r.start_s},
              {"end_s", r.end_s},
              {"fps_native", r.fps_native},
              {"co_occurring_retraction", r.co_occurring_retraction},
              {"source", r.source}};
}

ClipRecord record_from_json(const json& j, bool allow_non_action) {
  if (!j.is_object()) throw Error(Errc::MalformedRecord, "record is not an object");
  ClipRecord r;
  try {
    r.clip_id = j.at("clip_id").get<std::string>();
    r.video_id = j.value("video_id", std::string{});
    const auto surgery = j.value("surgery_type", std::string("Cholecystectomy"));
    auto s = parse_surgery(surgery);
    if (!s) throw Error(Errc::MalformedRecord, "unknown surgery_type '" + surgery + "' in " + r.clip_id);
    r.surgery_type = *s;
    const auto action = j.at("action").get<std::string>();
    auto a = parse_action(action, allow_non_action);
    if (!a) throw Error(Errc::MalformedRecord, "unknown action '" + action + "' in " + r.clip_id);
    r.action = *a;
    r.start_s = j.at("start_s").get<double>();
    r.end_s = j.at("end_s").get<double>();
    r.fps_native = j.value("fps_native", 25.0);
    r.co_occurring_retraction = j.value("co_occurring_retraction", false);
    r.source = j.value("source", std::string{});
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedRecord, e.what());
  }
  return r;
}

Manifest read_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(Errc::MalformedRecord, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.is_object() && j.contains("schema_version") && !j.contains("clip_id")) {
      m.schema_version = j["schema_version"].get<int>();
      continue;
    }
    m.records.push_back(record_from_json(j));
  }
  return m;
}

Manifest read_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open manifest " + path);
  return read_manifest(in);
}

void write_manifest(std::ostream& out, const Manifest& m) {
  out << json{{"schema_version", m.schema_version}}.dump() << '\n';
  for (const auto& r : m.records) out << record_to_json(r).dump() << '\n';
}

std::int64_t ClassHistogram::action_total(ActionClass a) const {
  std::int64_t t = 0;
  for (auto c : counts[static_cast<std::size_t>(a)]) t += c;
  return t;
}

std::int64_t ClassHistogram::surgery_total(SurgeryType s) const {
  std::int64_t t = 0;
  for (const auto& row : counts) t += row[static_cast<std::size_t>(s)];
  return t;
}

std::int64_t ClassHistogram::total() const {
  std::int64_t t = 0;
  for (const auto& row : counts)
    for (auto c : row) t += c;
  return t;
}

ClassHistogram class_histogram(const Manifest& m) {
  ClassHistogram h;
  for (const auto& r : m.records) {
    if (!is_trainable(r.action)) continue;
    ++h.counts[static_cast<std::size_t>(r.action)][static_cast<std::size_t>(r.surgery_type)];
  }
  return h;
}

}  // namespace bsa
