#pragma once

#include <map>
#include <string>

#include "bsa/skill/barcode.hpp"

namespace bsa::skill {

using Palette = std::map<ActionClass, std::string>;

/// One color per trainable action.
Palette default_palette();

struct SvgLayout {
  double width = 1000.0;
  double bar_height = 40.0;
  double legend_row = 18.0;
  std::string idle_color = "#d9d9d9";
};

/// Standalone SVG: a neutral background bar, one <rect class="segment"> per
/// barcode segment with x and width proportional to start and duration, and
/// a legend for the actions present. Segment rects carry data-action,
/// data-start and data-end attributes.
/// Throws Error(MissingColor) when an action on the timeline has no color.
std::string render_barcode_svg(const ActionBarcode& b, const Palette& palette = default_palette(),
                               const SvgLayout& layout = {});

}  // namespace bsa::skill
