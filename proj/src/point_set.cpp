#include "strip_steiner/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

namespace {

Unit scale_to_units(double v, std::int64_t scale, const char* what) {
  const double scaled = v * static_cast<double>(scale);
  // nearbyint honours the default FE_TONEAREST mode: round half to even.
  const double rounded = std::nearbyint(scaled);
  const Unit limit = coord_limit(scale);
  if (!std::isfinite(rounded) || rounded > static_cast<double>(limit) ||
      rounded < -static_cast<double>(limit)) {
    throw CoordOverflow(std::string(what) + " exceeds coordinate range at scale " +
                        std::to_string(scale));
  }
  return static_cast<Unit>(rounded);
}

}  // namespace

std::vector<std::size_t> PointSet::separator_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].x < points[i + 1].x) out.push_back(i);
  }
  return out;
}

PointSet ingest_points(const std::vector<std::pair<double, double>>& raw,
                       double delta, std::int64_t scale) {
  if (raw.empty()) throw std::invalid_argument("ingest_points: empty point list");
  if (!(delta > 0)) throw std::invalid_argument("ingest_points: delta must be > 0");
  if (scale < 1) throw std::invalid_argument("ingest_points: scale must be >= 1");

  PointSet ps;
  ps.scale = scale;
  ps.delta = scale_to_units(delta, scale, "delta");
  if (ps.delta <= 0) throw std::invalid_argument("ingest_points: delta rounds to 0 units");

  ps.points.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Point p;
    p.x = scale_to_units(raw[i].first, scale, "x");
    p.y = scale_to_units(raw[i].second, scale, "y");
    if (p.y < 0 || p.y > ps.delta) {
      throw OutOfStrip("point " + std::to_string(i) + " has y outside [0, delta]");
    }
    ps.points.push_back(p);
  }
  std::sort(ps.points.begin(), ps.points.end(),
            [](const Point& a, const Point& b) {
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  return ps;
}

PointSet make_point_set(std::vector<Point> pts, Unit delta_units,
                        std::int64_t scale, std::optional<int> sparseness_k) {
  if (pts.empty()) throw std::invalid_argument("make_point_set: empty point list");
  if (delta_units <= 0) throw std::invalid_argument("make_point_set: delta must be > 0");
  PointSet ps;
  ps.scale = scale;
  ps.delta = delta_units;
  ps.sparseness_k = sparseness_k;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].y < 0 || pts[i].y > delta_units) {
      throw OutOfStrip("point " + std::to_string(i) + " has y outside [0, delta]");
    }
  }
  ps.points = std::move(pts);
  std::sort(ps.points.begin(), ps.points.end(),
            [](const Point& a, const Point& b) {
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  return ps;
}

int measure_sparseness(const PointSet& ps) {
  // Points are sorted by x; slide a window of width `scale` units.
  int best = 0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < ps.points.size(); ++hi) {
    while (ps.points[hi].x - ps.points[lo].x > ps.scale) ++lo;
    best = std::max(best, static_cast<int>(hi - lo + 1));
  }
  return best;
}

}  // namespace strip_steiner
