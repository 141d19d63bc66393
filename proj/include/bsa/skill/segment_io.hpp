#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bsa/skill/barcode.hpp"

namespace bsa::skill {

// Segments use the manifest record schema with NonAction allowed; records
// are grouped by video_id. An optional header line
//   {"schema_version": 1, "durations": {"<video_id>": seconds, ...}}
// gives each timeline's total length; otherwise the last segment end is used.
struct SegmentFile {
  std::map<std::string, std::vector<TimelineSegment>> by_video;
  std::map<std::string, double> durations;

  /// Barcode for one video. Throws Error(InvalidArgument) for an unknown id.
  ActionBarcode barcode(const std::string& video_id) const;
};

SegmentFile read_segments(std::istream& in);
SegmentFile read_segments_file(const std::string& path);

}  // namespace bsa::skill
