#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "strip_steiner/crossing_pattern.hpp"
#include "strip_steiner/graph_steiner.hpp"
#include "strip_steiner/hanan_grid.hpp"
#include "strip_steiner/point_set.hpp"
#include "strip_steiner/rect_tree.hpp"

namespace strip_steiner {

// Exact graph-Steiner instance on a Hanan grid.
struct SteinerInstance {
  HananGrid grid;
  std::vector<std::uint32_t> terminals;  // grid vertex ids, non-empty
};

struct SteinerSolution {
  Unit length = 0;
  std::vector<Segment> segments;  // unit coordinates, sorted
};

SteinerInstance instance_from_points(const PointSet& ps);

// Optimal Steiner tree on the grid by Dreyfus-Wagner; exact length and a
// reconstructed edge set. Throws TooManyTerminals / DisconnectedGrid.
SteinerSolution dreyfus_wagner(const SteinerInstance& inst, std::size_t terminal_limit = 16);

// Independent oracle: exhaustive edge-subset scan (grid must have <= 26 edges).
SteinerSolution brute_force_mrst(const SteinerInstance& inst);

// Convenience wrappers over the full Hanan grid of P.
SteinerSolution oracle_solve(const PointSet& ps, std::size_t terminal_limit = 16);
SteinerSolution brute_solve(const PointSet& ps);

// ---------------------------------------------------------------------------
// Boundary-constrained subproblems. Everything below works in doubled units
// (coordinates and lengths multiplied by 2) so separator abscissae are exact
// integers; stubs reaching a boundary have half-gap lengths.

// One side of a boundary-constrained solve: the separator abscissa (doubled)
// and the crossing pattern there. Pattern points index into `rows_y`
// (undoubled unit y-coordinates of the governing grid).
struct Boundary {
  Unit abscissa_doubled = 0;
  CrossingPattern pattern;  // left side: plain; right side: mirrored (a guess)
};

struct BoundaryResult {
  bool feasible = false;          // false encodes length = infinity
  Unit length_doubled = 0;        // real (non-virtual) edge length, doubled units
  std::vector<Segment> segments_doubled;  // real edges in doubled coordinates
  CrossingPattern realized_right;         // non-mirrored pattern at the right wall
};

// Solves the slice between two walls (the slice may be empty). Terminals are
// the slice points plus all pattern crossing points; each pattern part is
// pre-connected by a chain of zero-weight virtual edges; virtual edges are
// stripped from the result. The realized right pattern is read off
// connectivity to the left of the right wall (through left virtual chains,
// which stand in for the left forest). Boundary columns carry no vertical
// edges. `rows_y` must be sorted ascending.
BoundaryResult solve_with_boundary(const std::vector<Point>& slice,
                                   const std::vector<Unit>& rows_y,
                                   const std::optional<Boundary>& left,
                                   const std::optional<Boundary>& right,
                                   std::size_t terminal_limit = 16);

// PACE-style graph Steiner instances (.gr format) for external cross-checks.
struct PaceInstance {
  WeightedGraph graph;
  std::vector<std::uint32_t> terminals;
};
PaceInstance parse_pace_gr(std::istream& in);

}  // namespace strip_steiner
