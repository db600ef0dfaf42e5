#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strip_steiner/coord.hpp"

namespace strip_steiner {

struct Point {
  Unit x = 0;
  Unit y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Terminals in the strip R x [0, delta], sorted by x (ties by y), in exact
// fixed-point units. Duplicates are kept.
struct PointSet {
  std::vector<Point> points;
  Unit delta = 0;                         // strip height in units
  std::int64_t scale = kDefaultScale;     // units per input coordinate unit
  std::optional<int> sparseness_k;        // max points per unit-width window, if known

  std::size_t size() const { return points.size(); }

  // Spacing between consecutive sorted terminals: x_{i+1} - x_i, i in [0, n-2].
  Unit spacing(std::size_t i) const { return points[i + 1].x - points[i].x; }

  // Separator s_i exists where x_i < x_{i+1}; its abscissa is the midpoint,
  // kept exact by working in doubled units (2*x).
  bool has_separator(std::size_t i) const {
    return i + 1 < points.size() && points[i].x < points[i + 1].x;
  }
  Unit separator_abscissa_doubled(std::size_t i) const {
    return points[i].x + points[i + 1].x;
  }

  // Indices i of all separators s_i, ascending.
  std::vector<std::size_t> separator_indices() const;
};

// Scales raw decimal coordinates into units (round half to even), validates
// the strip bounds, and sorts. Throws CoordOverflow / OutOfStrip /
// std::invalid_argument.
PointSet ingest_points(const std::vector<std::pair<double, double>>& raw,
                       double delta, std::int64_t scale);

// Constructs a PointSet directly from unit coordinates (sorting applied).
PointSet make_point_set(std::vector<Point> pts, Unit delta_units,
                        std::int64_t scale = 1,
                        std::optional<int> sparseness_k = std::nullopt);

// Smallest k such that every window [x, x+1] (one input-coordinate unit wide,
// i.e. `scale` units) contains at most k points.
int measure_sparseness(const PointSet& ps);

}  // namespace strip_steiner
