#include "bsa/planning/response.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"

namespace bsa::planning {

using nlohmann::json;

std::vector<ActionClass> AgentResponse::actions() const {
  std::vector<ActionClass> out;
  for (const auto& p : predictions) out.push_back(p.action);
  return out;
}

namespace {

// lower case, '_' and '-' as spaces, runs of spaces collapsed, trimmed
std::string normalize(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u) || c == '_' || c == '-') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

const std::map<std::string, ActionClass>& name_table() {
  static const std::map<std::string, ActionClass> table = [] {
    std::map<std::string, ActionClass> t;
    for (auto a : kAllActions) {
      t[normalize(action_name(a))] = a;
      t[normalize(action_label(a))] = a;
    }
    const std::pair<const char*, ActionClass> synonyms[] = {
        {"suction", ActionClass::Aspiration},
        {"suctioning", ActionClass::Aspiration},
        {"clip", ActionClass::Clipping},
        {"clip application", ActionClass::Clipping},
        {"vessel clipping", ActionClass::Clipping},
        {"clip applying", ActionClass::Clipping},
        {"cautery", ActionClass::Coagulation},
        {"cauterization", ActionClass::Coagulation},
        {"electrocoagulation", ActionClass::Coagulation},
        {"electrocautery", ActionClass::Coagulation},
        {"dissect", ActionClass::Dissection},
        {"blunt dissection", ActionClass::Dissection},
        {"sharp dissection", ActionClass::Dissection},
        {"knot", ActionClass::KnotTying},
        {"tie knot", ActionClass::KnotTying},
        {"needle grasp", ActionClass::NeedleGrasping},
        {"needle loading", ActionClass::NeedleGrasping},
        {"needle insertion", ActionClass::NeedlePuncture},
        {"needle passing", ActionClass::NeedlePuncture},
        {"specimen packaging", ActionClass::Packaging},
        {"specimen bagging", ActionClass::Packaging},
        {"packing", ActionClass::Packaging},
        {"suture pull", ActionClass::SuturePulling},
        {"thread pulling", ActionClass::SuturePulling},
        {"retraction", ActionClass::TissueRetraction},
        {"tissue retract", ActionClass::TissueRetraction},
    };
    for (const auto& [k, v] : synonyms) t[k] = v;
    return t;
  }();
  return table;
}

// Candidate object texts, most specific first: fenced ```json blocks, then
// every balanced {...} span in order of its opening brace.
std::vector<std::string_view> candidates(std::string_view raw) {
  std::vector<std::string_view> out;
  for (std::size_t pos = raw.find("```"); pos != std::string_view::npos;) {
    auto body = raw.find('\n', pos);
    if (body == std::string_view::npos) break;
    const auto end = raw.find("```", body);
    if (end == std::string_view::npos) break;
    out.push_back(raw.substr(body + 1, end - body - 1));
    pos = raw.find("```", end + 3);
  }
  for (std::size_t open = raw.find('{'); open != std::string_view::npos; open = raw.find('{', open + 1)) {
    int depth = 0;
    bool in_str = false, esc = false;
    for (std::size_t i = open; i < raw.size(); ++i) {
      const char c = raw[i];
      if (in_str) {
        if (esc) esc = false;
        else if (c == '\\') esc = true;
        else if (c == '"') in_str = false;
        continue;
      }
      if (c == '"') in_str = true;
      else if (c == '{') ++depth;
      else if (c == '}' && --depth == 0) {
        out.push_back(raw.substr(open, i - open + 1));
        break;
      }
    }
  }
  return out;
}

ActionClass resolve_or_throw(const std::string& name) {
  const auto a = resolve_action_name(name);
  if (!a) throw Error(Errc::UnknownAction, "'" + name + "' is not a basic surgical action");
  return *a;
}

std::string text_field(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  return j[key].is_string() ? j[key].get<std::string>() : j[key].dump();
}

}  // namespace

std::optional<ActionClass> resolve_action_name(std::string_view name) {
  const auto& t = name_table();
  const auto key = normalize(name);
  if (auto it = t.find(key); it != t.end()) return it->second;
  // "NeedleGrasping" style without separators
  for (auto a : kAllActions) {
    auto compact = normalize(action_label(a));
    compact.erase(std::remove(compact.begin(), compact.end(), ' '), compact.end());
    if (compact == key) return a;
  }
  return std::nullopt;
}

AgentResponse response_from_json(const json& j) {
  if (!j.is_object() || !j.contains("predictions")) throw Error(Errc::ParseError, "object has no predictions field");
  AgentResponse r;
  r.scene_understanding = text_field(j, "scene_understanding");
  r.progress_judgment = text_field(j, "progress_judgment");
  r.safety_considerations = text_field(j, "safety_considerations");

  std::vector<Prediction> raw;
  const auto& p = j["predictions"];
  auto add_name = [&](const std::string& name, std::string rationale) {
    raw.push_back({resolve_or_throw(name), std::move(rationale)});
  };
  if (p.is_string()) {
    std::stringstream ss(p.get<std::string>());
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.find_first_not_of(" \t") != std::string::npos) add_name(item, {});
    }
  } else if (p.is_array()) {
    for (const auto& e : p) {
      if (e.is_string()) add_name(e.get<std::string>(), {});
      else if (e.is_object() && e.contains("action") && e["action"].is_string()) {
        add_name(e["action"].get<std::string>(), text_field(e, "rationale"));
      } else {
        throw Error(Errc::ParseError, "prediction entry has no action: " + e.dump());
      }
    }
  } else {
    throw Error(Errc::ParseError, "predictions must be a list");
  }

  for (auto& pr : raw) {
    const bool dup = std::any_of(r.predictions.begin(), r.predictions.end(),
                                 [&](const Prediction& q) { return q.action == pr.action; });
    if (!dup && r.predictions.size() < kMaxPredictions) r.predictions.push_back(std::move(pr));
  }
  if (r.predictions.empty()) throw Error(Errc::ParseError, "no predictions");
  return r;
}

AgentResponse parse_response(std::string_view raw) {
  std::string last_problem = "no JSON object found";
  for (auto c : candidates(raw)) {
    const auto j = json::parse(c.begin(), c.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (!j.contains("predictions")) {
      last_problem = "JSON object has no predictions field";
      continue;
    }
    return response_from_json(j);  // UnknownAction propagates
  }
  throw Error(Errc::ParseError, last_problem);
}

json response_to_json(const AgentResponse& r) {
  json preds = json::array();
  for (const auto& p : r.predictions) {
    preds.push_back({{"action", std::string(action_name(p.action))}, {"rationale", p.rationale}});
  }
  return {{"scene_understanding", r.scene_understanding},
          {"progress_judgment", r.progress_judgment},
          {"safety_considerations", r.safety_considerations},
          {"predictions", std::move(preds)}};
}

}  // namespace bsa::planning
