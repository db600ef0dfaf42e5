#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "strip_steiner/hanan_grid.hpp"
#include "strip_steiner/point_set.hpp"

namespace strip_steiner {

// Axis-parallel segment in unit coordinates, normalised so (x1,y1) <= (x2,y2).
struct Segment {
  Unit x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  Segment() = default;
  Segment(Unit ax, Unit ay, Unit bx, Unit by);
  bool horizontal() const { return y1 == y2; }
  Unit length() const { return (x2 - x1) + (y2 - y1); }
  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

// An embedded rectilinear tree/forest: a set of grid edge ids over a shared
// HananGrid. Edges overlap only at grid vertices by construction.
struct RectTree {
  const HananGrid* grid = nullptr;
  std::vector<std::uint32_t> edges;  // sorted, unique
};

RectTree make_rect_tree(const HananGrid& grid, std::vector<std::uint32_t> edge_ids);

// Maps unit-coordinate segments onto grid edges, subdividing at interior grid
// lines. Throws GridMismatch when a segment is off-grid or not axis-parallel.
RectTree tree_from_segments(const HananGrid& grid, const std::vector<Segment>& segs);

// Exact total edge length in units.
Unit tree_length(const RectTree& t);

struct ValidationReport {
  bool disconnected = false;
  bool cyclic = false;
  std::vector<std::size_t> uncovered_terminals;  // indices into P.points
  bool valid() const {
    return !disconnected && !cyclic && uncovered_terminals.empty();
  }
};

// Checks {disconnected, cyclic, terminal-uncovered}. An empty report means T
// is a valid rectilinear Steiner tree for P. Throws GridMismatch when T's
// grid is not the Hanan grid of P.
ValidationReport validate_steiner_tree(const RectTree& t, const PointSet& ps);

struct TonicityProfile {
  int max = 0;
  std::vector<int> per_separator;             // aligned with separator_points
  std::vector<std::size_t> separator_points;  // point index i of each s_i
};

// Crossing counts per separator: horizontal edges whose x-span strictly
// contains the separator abscissa (midpoints handled in doubled units).
TonicityProfile tonicity(const RectTree& t, const PointSet& ps);

enum class VertexClass { Terminal, SteinerPoint, Corner, TPoint, Cross, Interior };

// Classification per vertex of T (only vertices touched by edges, plus
// terminal vertices). Degree-2 collinear non-terminals are Interior: grid
// subdivision, never tree nodes.
std::map<std::uint32_t, VertexClass> classify_vertices(const RectTree& t,
                                                       const PointSet& ps);

struct UShapeWitness {
  Segment bar;          // the slidable piece between the two attachments
  Segment prong_a;      // first edge of each same-side attachment
  Segment prong_b;
  bool prongs_positive = false;  // prongs extend toward +y (or +x for vertical bars)
};

// U-shapes: an edge-chain piece with two adjacent perpendicular complete
// segments attached on the same side and nothing else attached in between.
// Complete segments are maximal collinear chains with no interior terminal.
std::vector<UShapeWitness> detect_u_shapes(const RectTree& t, const PointSet& ps);

// Parallel-edge bound at separator pairs: for every pair of separators, the
// number of horizontal edges crossing both abscissae must be at most
// 1 + floor(delta / dist). Returns true when no pair violates the bound.
bool check_parallel_edge_bound(const RectTree& t, const PointSet& ps);

// Wide-spacing separators (spacing > delta) must be crossed exactly once.
bool check_wide_separator_monotonicity(const RectTree& t, const PointSet& ps);

// Canonical strokes of T: grid edges merged through Interior vertices.
// Deterministic order (sorted).
std::vector<Segment> canonical_segments(const RectTree& t, const PointSet& ps);

}  // namespace strip_steiner
