#pragma once

#include <string>
#include <vector>

#include "fractk/geom.hpp"

namespace fractk {

struct SvgPath {
  std::vector<Point> loop;             // closed loop, or
  std::vector<Segment> segments;       // a soup rendered as one multi-part path
  bool closed = true;
  std::string stroke = "#000000";
  std::string fill = "none";
  real stroke_width = 0;  // 0 picks a width from the view box
};

// Deterministic SVG document: paths in input order, view box fitted to the
// geometry with a 5% margin. Throws on empty geometry.
std::string render_svg(const std::vector<SvgPath>& paths);

}  // namespace fractk
