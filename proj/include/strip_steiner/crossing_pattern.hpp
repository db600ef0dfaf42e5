#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strip_steiner/hanan_grid.hpp"
#include "strip_steiner/point_set.hpp"
#include "strip_steiner/rect_tree.hpp"

namespace strip_steiner {

// Where a tree crosses a separator and how the crossing points are connected
// on one side of it. `points` are indices into the reference row list (the
// y-lines of the governing Hanan grid), sorted ascending. `partition` assigns
// a part id to each point, ids numbered by first appearance; the partition is
// non-crossing in y-order. A mirrored pattern is the same structure with the
// partition describing connectivity on the right-hand side.
struct CrossingPattern {
  std::size_t separator_index = 0;       // point index i of s_i
  std::vector<std::uint32_t> points;     // row indices, ascending
  std::vector<std::uint32_t> partition;  // part id per point

  bool empty() const { return points.empty(); }
  std::size_t part_count() const;
  // Stable byte key: [n, rows..., part ids...] (canonical form).
  std::string key() const;
  // Parts as lists of row indices, ordered by part id.
  std::vector<std::vector<std::uint32_t>> parts() const;

  friend bool operator==(const CrossingPattern&, const CrossingPattern&) = default;
};

using MirroredCrossingPattern = CrossingPattern;

// Canonicalises part ids to first-appearance order. Throws when the partition
// vector does not match the point count.
CrossingPattern canonical_pattern(std::size_t separator_index,
                                  std::vector<std::uint32_t> points,
                                  std::vector<std::uint32_t> part_ids);

bool is_noncrossing(const CrossingPattern& p);

// The y-coordinates where the Hanan grid meets a separator: all horizontal
// grid lines, at most n of them.
std::vector<Unit> crossing_points(const HananGrid& grid, std::size_t separator_index,
                                  const PointSet& ps);

// All non-crossing partitions of {0..m-1}, deterministic order; Catalan(m)
// of them.
std::vector<std::vector<std::uint32_t>> enumerate_noncrossing_partitions(std::size_t m);

// All patterns with at most `cap` points drawn from the grid's rows and a
// non-crossing partition.
std::vector<CrossingPattern> enumerate_viable_patterns(const HananGrid& grid,
                                                       std::size_t separator_index,
                                                       std::size_t cap);
std::vector<CrossingPattern> enumerate_viable_patterns(std::size_t row_count,
                                                       std::size_t separator_index,
                                                       std::size_t cap);

enum class Side { Left, Right };

// Crossing pattern of T at s_i: crossing rows of T, partitioned by
// same-component connectivity restricted to the chosen side.
CrossingPattern pattern_of_tree(const RectTree& t, const PointSet& ps,
                                std::size_t separator_index, Side side);

struct SlabComposition {
  CrossingPattern right;
  bool feasible = true;  // every left point continues into the slab
  bool acyclic = true;
};

// Union-find transport of a left pattern across a set of slab edges; the
// right pattern is read off connectivity at the right abscissa (doubled
// units). Coverage/dangling decisions are left to the DP layer.
SlabComposition compose_across_slab(const CrossingPattern& left,
                                    const std::vector<Unit>& row_ys,
                                    const RectTree& slab,
                                    Unit right_abscissa_doubled);

}  // namespace strip_steiner
