#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strip_steiner/crossing_pattern.hpp"
#include "strip_steiner/oracle.hpp"
#include "strip_steiner/point_set.hpp"

namespace strip_steiner {

// Hard walls split the instance into independent halves sharing the centre
// point; soft walls are separators guaranteed to carry O(sqrt(delta))
// crossings. Indices are 0-based into the sorted point set.
struct WallSet {
  std::vector<std::size_t> hard_centers;  // sorted; sentinels 0 and n-1 included
  std::vector<std::size_t> stride_detected;  // interior centres found by the scan
  std::vector<std::vector<std::size_t>> soft_per_interval;  // separator indices
};

// Smallest integer q with q*q >= delta (delta = delta_units / scale).
Unit ceil_sqrt_delta(Unit delta_units, std::int64_t scale);

// Five-point predicate: spacings at i..i+3 all strictly exceed delta and the
// middle three y-values strictly increase. `i` is the 0-based tuple start.
bool is_hard_wall(const PointSet& ps, std::size_t i);

// Stride-5 scan over tuple starts 0, 5, 10, ...; sentinels at the extreme
// points are always present.
WallSet find_hard_walls(const PointSet& ps);

// Window predicate: the x-span of points i..i+ceil(sqrt(delta)) strictly
// exceeds ceil(sqrt(delta))/4 (compared cross-multiplied, exactly).
bool is_soft_wall(const PointSet& ps, std::size_t i);

// Stride-q scan over window starts r = j, j+q, ... with r+q <= j_end; returns
// the separator indices of qualifying windows (skipping degenerate ones where
// no separator exists).
std::vector<std::size_t> find_soft_walls(const PointSet& ps, std::size_t j,
                                         std::size_t j_end);

struct FptConfig {
  std::int64_t delta_threshold = 100;     // oracle below, soft-wall DP at or above
  std::size_t dw_terminal_limit = 16;
  std::optional<std::size_t> soft_cap;    // override for ceil(18(2+sqrt(delta)))
  bool force_dp = false;                  // take the soft-wall branch regardless
};

struct RepresentativePair {
  CrossingPattern pattern;
  Unit length2 = 0;  // doubled units
};

struct RepresentativeStage {
  std::vector<RepresentativePair> pairs;
};

// One stage of the soft-wall dynamic program: extends every stored pair by
// every viable mirrored pattern at the right wall, keeping per realized
// pattern the minimum length. Pairs realizing an empty pattern are kept only
// when `allow_empty` (the driver forbids them while points remain to the
// right). `rows_y` must be sorted.
RepresentativeStage compute_A(const RepresentativeStage& prev,
                              const std::vector<Point>& slice,
                              const std::vector<Unit>& rows_y,
                              const std::optional<Unit>& left_abscissa2,
                              const std::optional<Unit>& right_abscissa2,
                              std::size_t right_separator_index, std::size_t cap,
                              bool allow_empty = true,
                              std::size_t terminal_limit = 16);

struct FptReport {
  WallSet walls;
  std::vector<std::size_t> interval_sizes;           // points per hard interval
  std::vector<std::vector<std::size_t>> stage_sizes;  // |A| per stage per interval
  bool used_dp = false;
};

struct FptResult {
  SteinerSolution solution;
  FptReport report;
};

// Hard-wall split followed by per-interval exact solves: the plain oracle for
// delta below the threshold, the soft-wall representative-set DP otherwise.
// Throws SubproblemTooLarge when an interval exceeds the oracle's terminal
// limit in the oracle branch.
FptResult compute_mrst(const PointSet& ps, const FptConfig& config = {});

}  // namespace strip_steiner
