#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bsa/core/action.hpp"

namespace bsa {

struct ClipRecord {
  std::string clip_id;
  std::string video_id;
  SurgeryType surgery_type = SurgeryType::Cholecystectomy;
  ActionClass action = ActionClass::Dissection;
  double start_s = 0.0;
  double end_s = 0.0;
  double fps_native = 25.0;
  bool co_occurring_retraction = false;
  std::string source;

  double duration_s() const noexcept { return end_s - start_s; }
};

inline constexpr int kManifestSchemaVersion = 1;

struct Manifest {
  std::vector<ClipRecord> records;
  int schema_version = kManifestSchemaVersion;

  /// Throws Error(InvalidManifest) on duplicate clip ids or a video that maps
  /// to more than one surgery type.
  void check() const;
};

// Line-delimited JSON. An optional first line {"schema_version": N} carries the
// version; every other non-blank line is one record with the keys clip_id,
// video_id, surgery_type, action, start_s, end_s, fps_native,
// co_occurring_retraction, source.
nlohmann::json record_to_json(const ClipRecord& r);
/// Throws Error(MalformedRecord) for missing keys or unknown enum names.
ClipRecord record_from_json(const nlohmann::json& j, bool allow_non_action = false);

Manifest read_manifest(std::istream& in);
Manifest read_manifest_file(const std::string& path);
void write_manifest(std::ostream& out, const Manifest& m);

/// Clip counts per (action, surgery type).
struct ClassHistogram {
  std::array<std::array<std::int64_t, kNumSurgeryTypes>, kNumActions> counts{};

  std::int64_t count(ActionClass a, SurgeryType s) const {
    return counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)];
  }
  std::int64_t action_total(ActionClass a) const;
  std::int64_t surgery_total(SurgeryType s) const;
  std::int64_t total() const;
};

/// Records labeled NonAction are not counted; valid manifests contain none.
ClassHistogram class_histogram(const Manifest& m);

}  // namespace bsa
