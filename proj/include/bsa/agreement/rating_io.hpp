#pragma once

#include <iosfwd>
#include <string>

#include "bsa/agreement/agreement.hpp"

namespace bsa::agreement {

// Comma-separated text, one item per line: clip_id,rater_a,rater_b
// Labels are action identifiers ("NeedleGrasping", "NonAction", ...).
// Blank lines, '#' comments and a "clip_id,..." header line are skipped.
// Throws Error(MalformedRecord) for a bad line, an unknown label or a
// repeated clip id.
RatingPair read_ratings(std::istream& in);
RatingPair read_ratings_file(const std::string& path);
void write_ratings(std::ostream& out, const RatingPair& p);

}  // namespace bsa::agreement
