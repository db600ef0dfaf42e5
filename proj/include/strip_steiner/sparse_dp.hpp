#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strip_steiner/crossing_pattern.hpp"
#include "strip_steiner/oracle.hpp"
#include "strip_steiner/point_set.hpp"

namespace strip_steiner {

struct SparseReport {
  std::size_t cap_used = 0;
  bool cap_was_auto = false;
  std::size_t stages = 0;
  std::size_t max_patterns_per_stage = 0;
  // The best tree's tonicity reached the cap somewhere: the constraint may be
  // binding and a larger cap could shorten the tree.
  bool cap_saturated = false;
  std::vector<int> tonicity_profile;
};

struct SparseResult {
  SteinerSolution solution;
  SparseReport report;
};

// ceil((9k+18) * (2 + sqrt(delta))) computed exactly on the rational
// delta = delta_units / scale.
std::size_t corollary_cap(int k, Unit delta_units, std::int64_t scale);

// Length of the greedy monotone Steiner tree (tonicity 1 everywhere): a valid
// upper bound for every cap >= 1, used for admissible pruning.
Unit monotone_upper_bound(const PointSet& ps);

// Separator-sweep dynamic program over viable crossing patterns. With
// cap = nullopt the cap is min(n, corollary_cap(k, delta)) from the point
// set's sparseness constant (MissingSparsenessK when unset). The result is
// the optimal length among Steiner trees crossing every separator at most
// `cap` times, with a reconstructed tree; NoSolution when no tree satisfies
// the cap.
SparseResult solve_sparse(const PointSet& ps, std::optional<std::size_t> cap);

// ---------------------------------------------------------------------------
// One DP stage, exposed for white-box tests. Rows are indices into `rows_y`.

struct SlabStageState {
  CrossingPattern pattern;  // crossing pattern at the slab's left wall
  Unit length2 = 0;         // accumulated doubled length
};

struct SlabSpec {
  std::vector<Unit> rows_y;       // sorted distinct y lines (units)
  std::uint64_t terminal_rows = 0;  // rows holding terminals on the column
  bool has_left_wall = false;
  bool has_right_wall = false;
  Unit continuation_weight2 = 0;  // left stub cost per crossing (doubled)
  Unit plug_weight2 = 0;          // right stub cost per crossing (doubled)
};

// Forward subset enumeration over the slab's edge universe (vertical column
// edges, forced left continuation stubs, chosen right plug stubs), relaxing
// each reachable right pattern to its minimum length.
std::vector<SlabStageState> slab_transition(const std::vector<SlabStageState>& prev,
                                            const SlabSpec& slab, std::size_t cap);

}  // namespace strip_steiner
