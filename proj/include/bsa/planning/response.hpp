#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bsa/core/action.hpp"

namespace bsa::planning {

inline constexpr std::size_t kMaxPredictions = 3;

struct Prediction {
  ActionClass action = ActionClass::Dissection;
  std::string rationale;
};

struct AgentResponse {
  std::string scene_understanding;
  std::string progress_judgment;
  std::string safety_considerations;
  std::vector<Prediction> predictions;  // 1-3, distinct, most likely first

  std::vector<ActionClass> actions() const;
};

/// Case-insensitive lookup against action identifiers, their spaced forms
/// ("needle grasping") and a fixed synonym table. No fuzzy matching.
std::optional<ActionClass> resolve_action_name(std::string_view name);

/// Finds the JSON object in `raw` (a fenced block, bare, or wrapped in prose)
/// and validates it. Repeated actions are dropped keeping the first, and the
/// list is cut to three. Throws Error(ParseError) when no usable object is
/// found and Error(UnknownAction) naming the first unrecognized action.
AgentResponse parse_response(std::string_view raw);

nlohmann::json response_to_json(const AgentResponse& r);
AgentResponse response_from_json(const nlohmann::json& j);

}  // namespace bsa::planning
