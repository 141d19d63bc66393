#include "bsa/skill/svg.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "bsa/core/error.hpp"

namespace bsa::skill {

Palette default_palette() {
  // Tableau-10
  static const char* colors[kNumActions] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                            "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  Palette p;
  for (std::size_t i = 0; i < kNumActions; ++i) p[kAllActions[i]] = colors[i];
  return p;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_barcode_svg(const ActionBarcode& b, const Palette& palette, const SvgLayout& layout) {
  std::set<ActionClass> present;
  for (const auto& s : b.segments) {
    if (s.action == ActionClass::NonAction) continue;
    if (!palette.count(s.action)) {
      throw Error(Errc::MissingColor, "no color for " + std::string(action_name(s.action)));
    }
    present.insert(s.action);
  }

  const double legend_top = layout.bar_height + 10.0;
  const double height = legend_top + layout.legend_row * static_cast<double>(present.size() + 1) + 4.0;
  const double scale = b.total_duration_s > 0.0 ? layout.width / b.total_duration_s : 0.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(layout.width) << "\" height=\"" << fmt(height)
     << "\" viewBox=\"0 0 " << fmt(layout.width) << ' ' << fmt(height) << "\" data-duration=\""
     << fmt(b.total_duration_s) << "\">\n";
  os << "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" << fmt(layout.width) << "\" height=\""
     << fmt(layout.bar_height) << "\" fill=\"" << layout.idle_color << "\"/>\n";

  for (const auto& s : b.segments) {
    const bool idle = s.action == ActionClass::NonAction;
    const std::string& fill = idle ? layout.idle_color : palette.at(s.action);
    os << "  <rect class=\"segment" << (idle ? " idle" : "") << "\" data-action=\"" << action_name(s.action)
       << "\" data-start=\"" << fmt(s.start_s) << "\" data-end=\"" << fmt(s.end_s) << "\" x=\""
       << fmt(s.start_s * scale) << "\" y=\"0\" width=\"" << fmt(s.duration_s() * scale) << "\" height=\""
       << fmt(layout.bar_height) << "\" fill=\"" << fill << "\"/>\n";
  }

  os << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double y = legend_top;
  auto entry = [&](const std::string& fill, std::string_view label) {
    os << "    <rect x=\"0\" y=\"" << fmt(y) << "\" width=\"12\" height=\"12\" fill=\"" << fill << "\"/>"
       << "<text x=\"18\" y=\"" << fmt(y + 10.0) << "\">" << label << "</text>\n";
    y += layout.legend_row;
  };
  for (auto a : present) entry(palette.at(a), action_label(a));
  entry(layout.idle_color, action_label(ActionClass::NonAction));
  os << "  </g>\n</svg>\n";
  return os.str();
}

}  // namespace bsa::skill
