#include "strip_steiner/svg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace strip_steiner {

namespace {

struct Bounds {
  Unit xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

Bounds bounds_of(const PointSet& ps, const std::vector<Segment>& edges) {
  Bounds b;
  b.xmin = b.xmax = ps.points.front().x;
  for (const Point& p : ps.points) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
  }
  for (const Segment& s : edges) {
    b.xmin = std::min(b.xmin, s.x1);
    b.xmax = std::max(b.xmax, s.x2);
  }
  b.ymin = 0;
  b.ymax = ps.delta;
  return b;
}

}  // namespace

std::string render_svg(const PointSet& ps, const std::vector<Segment>& edges,
                       const SvgOptions& options) {
  const Bounds b = bounds_of(ps, edges);
  const Unit width = std::max<Unit>(b.xmax - b.xmin, 1);
  const Unit height = std::max<Unit>(b.ymax - b.ymin, 1);
  const Unit margin = std::max<Unit>({width / 20, height / 10, 1});
  const Unit stroke = std::max<Unit>({width / 400, height / 100, 1});
  const Unit radius = 2 * stroke;
  const auto flip = [&](Unit y) { return b.ymax - y; };  // strip floor at the bottom

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (b.xmin - margin)
      << " " << -margin << " " << (width + 2 * margin) << " " << (height + 2 * margin)
      << "\">\n";
  // Strip outline.
  out << "  <rect x=\"" << b.xmin << "\" y=\"0\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"" << stroke
      << "\"/>\n";

  if (options.show_walls) {
    for (Unit a2 : options.wall_abscissae2) {
      out << "  <line x1=\"" << a2 / 2 << "\" y1=\"0\" x2=\"" << a2 / 2 << "\" y2=\""
          << height << "\" stroke=\"#cc3333\" stroke-width=\"" << stroke
          << "\" stroke-dasharray=\"" << 4 * stroke << " " << 4 * stroke << "\"/>\n";
    }
  }
  for (Unit a2 : options.separator_abscissae2) {
    out << "  <line x1=\"" << a2 / 2 << "\" y1=\"0\" x2=\"" << a2 / 2 << "\" y2=\""
        << height << "\" stroke=\"#9999cc\" stroke-width=\"" << stroke
        << "\" stroke-dasharray=\"" << 2 * stroke << " " << 2 * stroke << "\"/>\n";
  }

  std::vector<Segment> sorted_edges = edges;
  std::sort(sorted_edges.begin(), sorted_edges.end());
  for (const Segment& s : sorted_edges) {
    out << "  <line x1=\"" << s.x1 << "\" y1=\"" << flip(s.y1) << "\" x2=\"" << s.x2
        << "\" y2=\"" << flip(s.y2) << "\" stroke=\"#222222\" stroke-width=\"" << stroke
        << "\" stroke-linecap=\"square\"/>\n";
  }

  // Junction degree per vertex: endpoints count 1, pass-throughs count 2.
  std::map<std::pair<Unit, Unit>, int> degree;
  auto add_endpoint = [&](Unit x, Unit y) { degree[{x, y}] += 1; };
  for (const Segment& s : sorted_edges) {
    add_endpoint(s.x1, s.y1);
    add_endpoint(s.x2, s.y2);
  }
  for (auto& [xy, deg] : degree) {
    for (const Segment& s : sorted_edges) {
      const auto [x, y] = xy;
      if (s.horizontal()) {
        if (y == s.y1 && s.x1 < x && x < s.x2) deg += 2;
      } else {
        if (x == s.x1 && s.y1 < y && y < s.y2) deg += 2;
      }
    }
  }
  std::set<std::pair<Unit, Unit>> terminal_set;
  for (const Point& p : ps.points) terminal_set.insert({p.x, p.y});

  for (const auto& [xy, deg] : degree) {
    if (deg < 3 || terminal_set.count(xy)) continue;
    out << "  <circle cx=\"" << xy.first << "\" cy=\"" << flip(xy.second) << "\" r=\""
        << radius << "\" fill=\"#ffffff\" stroke=\"#222222\" stroke-width=\"" << stroke
        << "\"/>\n";
  }
  for (const auto& xy : terminal_set) {
    out << "  <circle cx=\"" << xy.first << "\" cy=\"" << flip(xy.second) << "\" r=\""
        << radius << "\" fill=\"#222222\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace strip_steiner
