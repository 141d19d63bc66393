#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace bsa {

/// The ten basic surgical actions, in alphabetical order. The enumerator value
/// is the classifier output index and the integer code used for correlation.
/// NonAction marks idle gaps on a timeline and is never a classifier target.
enum class ActionClass : int {
  Aspiration = 0,
  Clipping,
  Coagulation,
  Dissection,
  KnotTying,
  NeedleGrasping,
  NeedlePuncture,
  Packaging,
  SuturePulling,
  TissueRetraction,
  NonAction,
};

inline constexpr std::size_t kNumActions = 10;

inline constexpr std::array<ActionClass, kNumActions> kAllActions{
    ActionClass::Aspiration,     ActionClass::Clipping,       ActionClass::Coagulation, ActionClass::Dissection,
    ActionClass::KnotTying,      ActionClass::NeedleGrasping, ActionClass::NeedlePuncture, ActionClass::Packaging,
    ActionClass::SuturePulling,  ActionClass::TissueRetraction,
};

constexpr int to_index(ActionClass a) noexcept { return static_cast<int>(a); }
constexpr bool is_trainable(ActionClass a) noexcept { return a != ActionClass::NonAction; }

/// Throws Error(OutOfRange) for indices outside [0, 10).
ActionClass action_from_index(int index);

/// Canonical identifier, e.g. "NeedleGrasping".
std::string_view action_name(ActionClass a) noexcept;
/// Human label, e.g. "needle grasping".
std::string_view action_label(ActionClass a) noexcept;

/// Exact match against the canonical identifier (case-sensitive). Accepts
/// "NonAction" only when `allow_non_action` is set.
std::optional<ActionClass> parse_action(std::string_view name, bool allow_non_action = false);

enum class SurgeryType : int {
  Cholecystectomy = 0,
  Gastrectomy,
  Hysterectomy,
  IntestinalResection,
  Nephrectomy,
  Prostatectomy,
};

inline constexpr std::size_t kNumSurgeryTypes = 6;

inline constexpr std::array<SurgeryType, kNumSurgeryTypes> kAllSurgeryTypes{
    SurgeryType::Cholecystectomy, SurgeryType::Gastrectomy, SurgeryType::Hysterectomy,
    SurgeryType::IntestinalResection, SurgeryType::Nephrectomy, SurgeryType::Prostatectomy,
};

std::string_view surgery_name(SurgeryType s) noexcept;
std::optional<SurgeryType> parse_surgery(std::string_view name);

}  // namespace bsa
