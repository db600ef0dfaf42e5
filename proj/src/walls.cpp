#include "strip_steiner/walls.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"
#include "strip_steiner/hanan_grid.hpp"
#include "strip_steiner/rect_tree.hpp"
#include "strip_steiner/sparse_dp.hpp"

namespace strip_steiner {

Unit ceil_sqrt_delta(Unit delta_units, std::int64_t scale) {
  Unit q = static_cast<Unit>(std::ceil(
      std::sqrt(static_cast<double>(delta_units) / static_cast<double>(scale))));
  while (q > 0 && static_cast<__int128>(q - 1) * (q - 1) * scale >= delta_units) --q;
  while (static_cast<__int128>(q) * q * scale < delta_units) ++q;
  return q;
}

bool is_hard_wall(const PointSet& ps, std::size_t i) {
  if (i + 4 >= ps.size()) {
    throw IndexOutOfRange("is_hard_wall: tuple " + std::to_string(i) + " exceeds n");
  }
  for (std::size_t j = i; j <= i + 3; ++j) {
    if (!(ps.spacing(j) > ps.delta)) return false;
  }
  return ps.points[i + 1].y < ps.points[i + 2].y &&
         ps.points[i + 2].y < ps.points[i + 3].y;
}

WallSet find_hard_walls(const PointSet& ps) {
  WallSet ws;
  const std::size_t n = ps.size();
  for (std::size_t j = 0; 5 * j + 4 < n; ++j) {
    const std::size_t i = 5 * j;
    if (is_hard_wall(ps, i)) ws.stride_detected.push_back(i + 2);
  }
  ws.hard_centers.push_back(0);
  for (std::size_t c : ws.stride_detected) {
    if (c != 0 && c != n - 1) ws.hard_centers.push_back(c);
  }
  if (n > 1) ws.hard_centers.push_back(n - 1);
  return ws;
}

bool is_soft_wall(const PointSet& ps, std::size_t i) {
  const Unit q = ceil_sqrt_delta(ps.delta, ps.scale);
  if (i + static_cast<std::size_t>(q) >= ps.size()) {
    throw IndexOutOfRange("is_soft_wall: window " + std::to_string(i) + " exceeds n");
  }
  const Unit span = ps.points[i + static_cast<std::size_t>(q)].x - ps.points[i].x;
  // span > q/4 in input coordinates: 4 * span_units > q * scale.
  return static_cast<__int128>(4) * span > static_cast<__int128>(q) * ps.scale;
}

std::vector<std::size_t> find_soft_walls(const PointSet& ps, std::size_t j,
                                         std::size_t j_end) {
  if (j > j_end) throw std::invalid_argument("find_soft_walls: j > j_end");
  const std::size_t q = static_cast<std::size_t>(ceil_sqrt_delta(ps.delta, ps.scale));
  std::vector<std::size_t> out;
  for (std::size_t r = j; r + q <= j_end; r += q) {
    if (!is_soft_wall(ps, r)) continue;
    if (!ps.has_separator(r)) continue;  // window qualifies but s_r is degenerate
    out.push_back(r);
  }
  return out;
}

namespace {

std::size_t soft_cap_default(Unit delta_units, std::int64_t scale) {
  // ceil(18 * (2 + sqrt(delta))) = 36 + ceil(18 * sqrt(delta)).
  Unit c = static_cast<Unit>(std::ceil(
      18.0 * std::sqrt(static_cast<double>(delta_units) / static_cast<double>(scale))));
  while (c > 0 && static_cast<__int128>(c - 1) * (c - 1) * scale >=
                      static_cast<__int128>(324) * delta_units) {
    --c;
  }
  while (static_cast<__int128>(c) * c * scale < static_cast<__int128>(324) * delta_units) {
    ++c;
  }
  return static_cast<std::size_t>(36 + c);
}

struct StagePair {
  CrossingPattern pattern;
  Unit length2 = 0;
  std::size_t pred = 0;                    // index into the previous stage
  std::vector<Segment> segments_doubled;   // real edges added by this stage
};

std::vector<StagePair> stage_step(const std::vector<StagePair>& prev,
                                  const std::vector<Point>& slice,
                                  const std::vector<Unit>& rows_y,
                                  const std::optional<Unit>& left_abscissa2,
                                  const std::optional<Unit>& right_abscissa2,
                                  std::size_t right_sep_index, std::size_t cap,
                                  bool allow_empty, std::size_t terminal_limit,
                                  Unit budget2 = kUnitInfinity,
                                  Unit completion_lb2 = 0) {
  std::vector<CrossingPattern> guesses;
  if (right_abscissa2) {
    guesses = enumerate_viable_patterns(rows_y.size(), right_sep_index, cap);
  } else {
    guesses.push_back(CrossingPattern{});  // final stage: no right wall
  }

  bool limit_hit = false;
  std::map<std::string, StagePair> best;
  for (std::size_t pi = 0; pi < prev.size(); ++pi) {
    const StagePair& pp = prev[pi];
    if (pp.length2 > budget2) continue;
    std::optional<Boundary> left;
    if (left_abscissa2) left = Boundary{*left_abscissa2, pp.pattern};
    for (const CrossingPattern& guess : guesses) {
      std::optional<Boundary> right;
      if (right_abscissa2) right = Boundary{*right_abscissa2, guess};
      BoundaryResult res;
      try {
        res = solve_with_boundary(slice, rows_y, left, right, terminal_limit);
      } catch (const TooManyTerminals&) {
        limit_hit = true;
        continue;  // this guess is out of reach for the exact solver
      }
      if (!res.feasible) continue;
      if (pp.length2 + res.length_doubled + completion_lb2 > budget2) continue;
      CrossingPattern realized = res.realized_right;
      realized.separator_index = right_sep_index;
      if (realized.empty() && !allow_empty && right_abscissa2) continue;
      if (realized.points.size() > cap || !is_noncrossing(realized)) continue;

      StagePair cand;
      cand.pattern = realized;
      cand.length2 = pp.length2 + res.length_doubled;
      cand.pred = pi;
      cand.segments_doubled = res.segments_doubled;
      const std::string key = realized.key();
      auto it = best.find(key);
      if (it == best.end() || cand.length2 < it->second.length2) {
        best.insert_or_assign(key, std::move(cand));
      }
    }
  }
  if (best.empty() && limit_hit) {
    throw TooManyTerminals("soft-wall stage exceeds the oracle terminal limit");
  }
  std::vector<StagePair> out;
  out.reserve(best.size());
  for (auto& [k, v] : best) out.push_back(std::move(v));
  return out;
}

// Merges touching collinear doubled segments, then halves coordinates.
// Stub pairs meeting at a wall fuse into full edges here; any leftover odd
// endpoint means an unpaired stub, which an optimal union never has.
std::vector<Segment> fuse_and_halve(std::vector<Segment> segs) {
  std::vector<Segment> horiz, vert;
  for (const Segment& s : segs) {
    if (s.length() == 0) continue;
    (s.horizontal() ? horiz : vert).push_back(s);
  }
  auto merge_runs = [](std::vector<Segment>& v, bool horizontal) {
    std::sort(v.begin(), v.end(), [&](const Segment& a, const Segment& b) {
      if (horizontal) return a.y1 != b.y1 ? a.y1 < b.y1 : a.x1 < b.x1;
      return a.x1 != b.x1 ? a.x1 < b.x1 : a.y1 < b.y1;
    });
    std::vector<Segment> out;
    for (const Segment& s : v) {
      if (!out.empty()) {
        Segment& last = out.back();
        const bool same_line = horizontal ? last.y1 == s.y1 : last.x1 == s.x1;
        if (same_line && (horizontal ? last.x2 >= s.x1 : last.y2 >= s.y1)) {
          if (horizontal) {
            last.x2 = std::max(last.x2, s.x2);
          } else {
            last.y2 = std::max(last.y2, s.y2);
          }
          continue;
        }
      }
      out.push_back(s);
    }
    return out;
  };
  horiz = merge_runs(horiz, true);
  vert = merge_runs(vert, false);

  std::vector<Segment> out;
  for (const auto& list : {horiz, vert}) {
    for (const Segment& s : list) {
      if (s.x1 % 2 != 0 || s.x2 % 2 != 0 || s.y1 % 2 != 0 || s.y2 % 2 != 0) {
        throw std::logic_error("unpaired boundary stub in assembled tree");
      }
      out.emplace_back(s.x1 / 2, s.y1 / 2, s.x2 / 2, s.y2 / 2);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct IntervalSolution {
  Unit length = 0;
  std::vector<Segment> segments;          // unit coordinates
  std::vector<std::size_t> stage_sizes;
};

IntervalSolution solve_interval_oracle(const PointSet& ps, std::size_t a, std::size_t b,
                                       const FptConfig& config) {
  std::vector<Point> pts(ps.points.begin() + a, ps.points.begin() + b + 1);
  PointSet sub;
  sub.points = std::move(pts);
  sub.delta = ps.delta;
  sub.scale = ps.scale;
  SteinerSolution sol;
  try {
    sol = oracle_solve(sub, config.dw_terminal_limit);
  } catch (const TooManyTerminals&) {
    throw SubproblemTooLarge(
        "interval [" + std::to_string(a) + ", " + std::to_string(b) +
            "] exceeds the oracle terminal limit",
        a, b);
  }
  return {sol.length, sol.segments, {}};
}

IntervalSolution solve_interval_dp(const PointSet& ps, std::size_t a, std::size_t b,
                                   const FptConfig& config) {
  IntervalSolution out;
  // Rows: distinct y-lines of the interval.
  std::vector<Unit> rows_y;
  for (std::size_t i = a; i <= b; ++i) rows_y.push_back(ps.points[i].y);
  std::sort(rows_y.begin(), rows_y.end());
  rows_y.erase(std::unique(rows_y.begin(), rows_y.end()), rows_y.end());

  const std::size_t cap =
      config.soft_cap ? *config.soft_cap : soft_cap_default(ps.delta, ps.scale);

  // Admissible pruning: the monotone tree of the interval bounds the optimum.
  PointSet interval;
  interval.points.assign(ps.points.begin() + a, ps.points.begin() + b + 1);
  interval.delta = ps.delta;
  interval.scale = ps.scale;
  const Unit budget2 = 2 * monotone_upper_bound(interval);

  const auto softs = find_soft_walls(ps, a, b);

  // Stage boundaries: interval start, each soft wall separator, interval end.
  std::vector<std::vector<StagePair>> stages;
  stages.push_back({StagePair{}});  // empty pattern, zero length

  std::size_t slice_begin = a;
  std::optional<Unit> left_abs2;
  for (std::size_t wi = 0; wi <= softs.size(); ++wi) {
    const bool final_stage = wi == softs.size();
    const std::size_t sep = final_stage ? 0 : softs[wi];
    std::optional<Unit> right_abs2;
    std::size_t slice_end;  // one past the last slice point
    if (final_stage) {
      slice_end = b + 1;
    } else {
      right_abs2 = ps.separator_abscissa_doubled(sep);
      slice_end = sep + 1;
    }
    std::vector<Point> slice(ps.points.begin() + slice_begin,
                             ps.points.begin() + slice_end);
    const bool points_right = slice_end <= b;  // anything strictly right of wall
    const Unit completion_lb2 =
        final_stage ? 0 : 2 * ps.points[b].x - ps.separator_abscissa_doubled(sep);
    auto next = stage_step(stages.back(), slice, rows_y, left_abs2, right_abs2, sep,
                           cap, /*allow_empty=*/!points_right,
                           config.dw_terminal_limit, budget2, completion_lb2);
    if (next.empty()) {
      throw NoSolution("soft-wall stage produced no representative pairs");
    }
    out.stage_sizes.push_back(next.size());
    stages.push_back(std::move(next));
    slice_begin = slice_end;
    left_abs2 = right_abs2;
  }

  // Final stage holds exactly the empty pattern; walk backpointers.
  const auto& final_pairs = stages.back();
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < final_pairs.size(); ++i) {
    if (final_pairs[i].length2 < final_pairs[best_idx].length2) best_idx = i;
  }
  std::vector<Segment> doubled;
  std::size_t idx = best_idx;
  for (std::size_t s = stages.size(); s-- > 1;) {
    const StagePair& p = stages[s][idx];
    doubled.insert(doubled.end(), p.segments_doubled.begin(), p.segments_doubled.end());
    idx = p.pred;
  }
  const Unit len2 = final_pairs[best_idx].length2;
  if (len2 % 2 != 0) throw std::logic_error("interval DP produced odd doubled length");
  out.length = len2 / 2;
  out.segments = fuse_and_halve(std::move(doubled));
  return out;
}

}  // namespace

RepresentativeStage compute_A(const RepresentativeStage& prev,
                              const std::vector<Point>& slice,
                              const std::vector<Unit>& rows_y,
                              const std::optional<Unit>& left_abscissa2,
                              const std::optional<Unit>& right_abscissa2,
                              std::size_t right_separator_index, std::size_t cap,
                              bool allow_empty, std::size_t terminal_limit) {
  std::vector<StagePair> prev_pairs;
  for (const auto& p : prev.pairs) prev_pairs.push_back({p.pattern, p.length2, 0, {}});
  const auto next = stage_step(prev_pairs, slice, rows_y, left_abscissa2,
                               right_abscissa2, right_separator_index, cap,
                               allow_empty, terminal_limit);
  RepresentativeStage out;
  for (const auto& p : next) out.pairs.push_back({p.pattern, p.length2});
  return out;
}

FptResult compute_mrst(const PointSet& ps, const FptConfig& config) {
  FptResult result;
  result.report.walls = find_hard_walls(ps);
  const auto& centers = result.report.walls.hard_centers;

  const bool use_oracle =
      !config.force_dp &&
      static_cast<__int128>(ps.delta) <
          static_cast<__int128>(config.delta_threshold) * ps.scale;
  result.report.used_dp = !use_oracle;

  std::vector<Segment> all_segments;
  Unit total = 0;
  for (std::size_t t = 0; t + 1 < std::max<std::size_t>(centers.size(), 2); ++t) {
    const std::size_t a = centers[t];
    const std::size_t b = centers.size() > 1 ? centers[t + 1] : centers[t];
    result.report.interval_sizes.push_back(b - a + 1);
    IntervalSolution sol;
    if (use_oracle) {
      sol = solve_interval_oracle(ps, a, b, config);
      result.report.walls.soft_per_interval.push_back({});
    } else {
      result.report.walls.soft_per_interval.push_back(find_soft_walls(ps, a, b));
      sol = solve_interval_dp(ps, a, b, config);
    }
    total += sol.length;
    all_segments.insert(all_segments.end(), sol.segments.begin(), sol.segments.end());
    result.report.stage_sizes.push_back(sol.stage_sizes);
  }

  // Assemble on the full Hanan grid; interval optima never overlap, so the
  // union's length equals the sum.
  const HananGrid grid = build_hanan_grid(ps);
  const RectTree tree = tree_from_segments(grid, all_segments);
  if (tree_length(tree) != total) {
    throw std::logic_error("compute_mrst: interval union length mismatch");
  }
  const auto report = validate_steiner_tree(tree, ps);
  if (!report.valid()) throw std::logic_error("compute_mrst: invalid assembled tree");

  result.solution.length = total;
  result.solution.segments = canonical_segments(tree, ps);
  return result;
}

}  // namespace strip_steiner
