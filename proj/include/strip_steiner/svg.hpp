#pragma once

#include <string>
#include <vector>

#include "strip_steiner/point_set.hpp"
#include "strip_steiner/rect_tree.hpp"

namespace strip_steiner {

struct SvgOptions {
  bool show_walls = false;                 // dashed verticals at hard walls
  std::vector<Unit> wall_abscissae2;       // doubled abscissae to draw
  std::vector<Unit> separator_abscissae2;  // optional dashed separators
};

// Deterministic SVG: terminals as filled circles, Steiner points hollow,
// tree edges as strokes. Coordinates at raw unit scale inside a viewBox with
// the y-axis flipped so the strip floor renders at the bottom.
std::string render_svg(const PointSet& ps, const std::vector<Segment>& edges,
                       const SvgOptions& options = {});

}  // namespace strip_steiner
