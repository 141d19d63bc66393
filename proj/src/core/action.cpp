#include "bsa/core/action.hpp"

#include <string>

#include "bsa/core/error.hpp"

namespace bsa {

ActionClass action_from_index(int index) {
  if (index < 0 || index >= static_cast<int>(kNumActions)) {
    throw Error(Errc::OutOfRange, "action index " + std::to_string(index));
  }
  return static_cast<ActionClass>(index);
}

std::string_view action_name(ActionClass a) noexcept {
  switch (a) {
    case ActionClass::Aspiration: return "Aspiration";
    case ActionClass::Clipping: return "Clipping";
    case ActionClass::Coagulation: return "Coagulation";
    case ActionClass::Dissection: return "Dissection";
    case ActionClass::KnotTying: return "KnotTying";
    case ActionClass::NeedleGrasping: return "NeedleGrasping";
    case ActionClass::NeedlePuncture: return "NeedlePuncture";
    case ActionClass::Packaging: return "Packaging";
    case ActionClass::SuturePulling: return "SuturePulling";
    case ActionClass::TissueRetraction: return "TissueRetraction";
    case ActionClass::NonAction: return "NonAction";
  }
  return "?";
}

std::string_view action_label(ActionClass a) noexcept {
  switch (a) {
    case ActionClass::Aspiration: return "aspiration";
    case ActionClass::Clipping: return "clipping";
    case ActionClass::Coagulation: return "coagulation";
    case ActionClass::Dissection: return "dissection";
    case ActionClass::KnotTying: return "knot tying";
    case ActionClass::NeedleGrasping: return "needle grasping";
    case ActionClass::NeedlePuncture: return "needle puncture";
    case ActionClass::Packaging: return "packaging";
    case ActionClass::SuturePulling: return "suture pulling";
    case ActionClass::TissueRetraction: return "tissue retraction";
    case ActionClass::NonAction: return "idle";
  }
  return "?";
}

std::optional<ActionClass> parse_action(std::string_view name, bool allow_non_action) {
  for (ActionClass a : kAllActions) {
    if (action_name(a) == name) return a;
  }
  if (allow_non_action && name == action_name(ActionClass::NonAction)) return ActionClass::NonAction;
  return std::nullopt;
}

std::string_view surgery_name(SurgeryType s) noexcept {
  switch (s) {
    case SurgeryType::Cholecystectomy: return "Cholecystectomy";
    case SurgeryType::Gastrectomy: return "Gastrectomy";
    case SurgeryType::Hysterectomy: return "Hysterectomy";
    case SurgeryType::IntestinalResection: return "IntestinalResection";
    case SurgeryType::Nephrectomy: return "Nephrectomy";
    case SurgeryType::Prostatectomy: return "Prostatectomy";
  }
  return "?";
}

std::optional<SurgeryType> parse_surgery(std::string_view name) {
  for (SurgeryType s : kAllSurgeryTypes) {
    if (surgery_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace bsa
