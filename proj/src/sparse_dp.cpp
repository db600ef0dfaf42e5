#include "strip_steiner/sparse_dp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"
#include "strip_steiner/hanan_grid.hpp"
#include "strip_steiner/rect_tree.hpp"

namespace strip_steiner {

std::size_t corollary_cap(int k, Unit delta_units, std::int64_t scale) {
  if (k < 1) throw std::invalid_argument("corollary_cap: k must be >= 1");
  const long long t = 9LL * k + 18;
  // ceil(t * sqrt(delta)): smallest c with c^2 * scale >= t^2 * delta_units.
  const __int128 rhs = static_cast<__int128>(t) * t * delta_units;
  long long c = static_cast<long long>(
      std::ceil(static_cast<double>(t) *
                std::sqrt(static_cast<double>(delta_units) / static_cast<double>(scale))));
  while (c > 0 && static_cast<__int128>(c - 1) * (c - 1) * scale >= rhs) --c;
  while (static_cast<__int128>(c) * c * scale < rhs) ++c;
  return static_cast<std::size_t>(2 * t + c);
}

Unit monotone_upper_bound(const PointSet& ps) {
  // Greedy monotone tree over per-column vertical spans.
  struct Column {
    Unit x, lo, hi;
  };
  std::vector<Column> cols;
  for (const Point& p : ps.points) {
    if (!cols.empty() && cols.back().x == p.x) {
      cols.back().lo = std::min(cols.back().lo, p.y);
      cols.back().hi = std::max(cols.back().hi, p.y);
    } else {
      cols.push_back({p.x, p.y, p.y});
    }
  }
  Unit len = cols[0].hi - cols[0].lo;
  Unit lo = cols[0].lo, hi = cols[0].hi;
  for (std::size_t i = 1; i < cols.size(); ++i) {
    len += cols[i].x - cols[i - 1].x;
    if (cols[i].hi < lo) {  // next span entirely below
      len += lo - cols[i].lo;
      hi = lo;
      lo = cols[i].lo;
    } else if (cols[i].lo > hi) {  // entirely above
      len += cols[i].hi - hi;
      lo = hi;
      hi = cols[i].hi;
    } else {
      len += cols[i].hi - cols[i].lo;
      lo = cols[i].lo;
      hi = cols[i].hi;
    }
  }
  return len;
}

namespace {

constexpr std::size_t kMaxRows = 64;

struct DpState {
  std::string key;                      // canonical pattern key
  std::uint64_t points_mask = 0;        // crossing rows
  std::vector<std::uint32_t> rows;      // ascending
  std::vector<std::uint32_t> parts;     // part id per row (canonical)
  Unit len2 = 0;
  // Backpointer: predecessor state index and the slab subset that reached it.
  std::size_t pred = 0;
  std::uint64_t vmask = 0;
  std::uint64_t plugmask = 0;
};

// One enumerated slab subset: plug rows plus vertical runs (maximal intervals
// of chosen vertical edges with endpoints on anchor rows).
struct Summary {
  std::uint64_t plugmask = 0;
  std::uint64_t vmask = 0;       // bit r: edge between rows r and r+1
  std::uint64_t runs_rows = 0;   // rows covered by some run
  Unit cost2 = 0;
  std::vector<std::int8_t> run_of_row;  // -1 when not in a run
  std::int8_t num_runs = 0;
};

struct SlabContext {
  std::size_t R = 0;
  std::vector<Unit> wv;        // vertical edge weights (doubled), size R-1
  std::uint64_t term_mask = 0;
  bool has_left = false;
  bool has_right = false;
  Unit wl = 0;  // continuation stub weight (doubled)
  Unit wr = 0;  // plug stub weight (doubled)
};

// Enumerates all admissible (plug set, vertical runs) subsets of a slab.
// Anchors are the rows where a run may start or end. `cost_cap` bounds
// cost2 + |plugs| * plug_future_lb.
std::vector<Summary> enumerate_summaries(const SlabContext& slab,
                                         std::uint64_t anchor_mask, std::size_t cap,
                                         Unit cost_cap, Unit plug_future_lb) {
  std::vector<Summary> out;
  std::vector<std::uint32_t> plug_rows;

  // Recursion over plug choices (rows ascending), then over vertical runs.
  auto emit_with_runs = [&](std::uint64_t plugmask, Unit plug_cost) {
    std::vector<std::uint32_t> anchors;
    const std::uint64_t amask = anchor_mask | plugmask;
    for (std::size_t r = 0; r < slab.R; ++r) {
      if (amask >> r & 1) anchors.push_back(static_cast<std::uint32_t>(r));
    }
    const Unit base_lb =
        plug_cost + static_cast<Unit>(std::popcount(plugmask)) * plug_future_lb;

    Summary cur;
    cur.plugmask = plugmask;
    cur.cost2 = plug_cost;
    cur.run_of_row.assign(slab.R, -1);

    auto rec = [&](auto&& self, std::size_t ai) -> void {
      out.push_back(cur);  // runs chosen so far form a valid subset
      for (std::size_t s = ai; s < anchors.size(); ++s) {
        for (std::size_t e = s + 1; e < anchors.size(); ++e) {
          // Run from anchors[s] to anchors[e].
          Unit w = 0;
          for (std::uint32_t r = anchors[s]; r < anchors[e]; ++r) w += slab.wv[r];
          if (base_lb + (cur.cost2 - plug_cost) + w > cost_cap) break;
          const std::int8_t id = cur.num_runs;
          for (std::uint32_t r = anchors[s]; r < anchors[e]; ++r) cur.vmask |= 1ull << r;
          for (std::uint32_t r = anchors[s]; r <= anchors[e]; ++r) {
            cur.runs_rows |= 1ull << r;
            cur.run_of_row[r] = id;
          }
          cur.num_runs = static_cast<std::int8_t>(id + 1);
          cur.cost2 += w;
          self(self, e + 1);
          cur.cost2 -= w;
          cur.num_runs = id;
          for (std::uint32_t r = anchors[s]; r <= anchors[e]; ++r) {
            cur.runs_rows &= ~(1ull << r);
            cur.run_of_row[r] = -1;
          }
          for (std::uint32_t r = anchors[s]; r < anchors[e]; ++r) cur.vmask &= ~(1ull << r);
        }
      }
    };
    rec(rec, 0);
  };

  auto rec_plugs = [&](auto&& self, std::size_t row, Unit plug_cost) -> void {
    std::uint64_t pm = 0;
    for (std::uint32_t r : plug_rows) pm |= 1ull << r;
    emit_with_runs(pm, plug_cost);
    if (plug_rows.size() == cap) return;
    for (std::size_t r = row; r < slab.R; ++r) {
      const Unit nc = plug_cost + slab.wr;
      if (nc + static_cast<Unit>(plug_rows.size() + 1) * plug_future_lb > cost_cap) break;
      plug_rows.push_back(static_cast<std::uint32_t>(r));
      self(self, r + 1, nc);
      plug_rows.pop_back();
    }
  };

  if (slab.has_right) {
    rec_plugs(rec_plugs, 0, 0);
  } else {
    emit_with_runs(0, 0);
  }
  std::sort(out.begin(), out.end(), [](const Summary& a, const Summary& b) {
    if (a.cost2 != b.cost2) return a.cost2 < b.cost2;
    if (a.vmask != b.vmask) return a.vmask < b.vmask;
    return a.plugmask < b.plugmask;
  });
  return out;
}

struct TransitionResult {
  std::vector<DpState> states;
};

// Applies one slab to a stage. `budget2` is an admissible ceiling on
// len2 + subset cost + completion lower bound; states beyond it are dropped.
TransitionResult run_transition(const std::vector<DpState>& prev, const SlabContext& slab,
                                std::size_t cap, Unit budget2, Unit span_lb2,
                                Unit plug_future_lb) {
  // Anchor rows: terminals, any stored crossing row, any plug row (added
  // during enumeration). Runs with other endpoints are always shrinkable.
  std::uint64_t lambda_union = 0;
  Unit min_state = kUnitInfinity;
  for (const DpState& s : prev) {
    lambda_union |= s.points_mask;
    const Unit cont = slab.has_left
                          ? static_cast<Unit>(std::popcount(s.points_mask)) * slab.wl
                          : 0;
    min_state = std::min(min_state, s.len2 + cont);
  }
  TransitionResult result;
  if (prev.empty()) return result;
  const Unit cost_cap = budget2 >= kUnitInfinity || min_state >= kUnitInfinity
                            ? kUnitInfinity
                            : budget2 - min_state - span_lb2;

  const auto summaries =
      enumerate_summaries(slab, lambda_union | slab.term_mask, cap, cost_cap,
                          plug_future_lb);

  std::map<std::string, std::size_t> index;
  std::vector<DpState> next;

  // Union-find scratch: parts, runs, singleton column nodes (<= 64 each).
  std::vector<std::uint32_t> uf(3 * kMaxRows);

  for (std::size_t si = 0; si < prev.size(); ++si) {
    const DpState& st = prev[si];
    const std::uint64_t lambda = st.points_mask;
    const Unit cont =
        slab.has_left ? static_cast<Unit>(std::popcount(lambda)) * slab.wl : 0;
    const Unit fixed = st.len2 + cont + span_lb2;
    if (fixed > budget2) continue;

    const std::size_t P = st.parts.empty()
                              ? 0
                              : 1 + *std::max_element(st.parts.begin(), st.parts.end());

    for (const Summary& sm : summaries) {
      if (fixed + sm.cost2 > budget2) break;  // summaries sorted by cost
      if (fixed + sm.cost2 +
              static_cast<Unit>(std::popcount(sm.plugmask)) * plug_future_lb >
          budget2) {
        continue;
      }
      // Every crossing must continue onto something at the column.
      const std::uint64_t touched = sm.runs_rows | sm.plugmask | slab.term_mask;
      if (lambda & ~touched) continue;
      // Every terminal must be reached by a run, a plug stub or a crossing.
      if (slab.term_mask & ~(sm.runs_rows | sm.plugmask | lambda)) continue;

      // Entities: [0, P) parts, [P, P+num_runs) runs, then one node per
      // attached row outside runs.
      const std::size_t runs_base = P;
      const std::size_t rows_base = P + static_cast<std::size_t>(sm.num_runs);
      const std::uint64_t attached =
          (lambda | sm.plugmask | slab.term_mask) & ~sm.runs_rows;
      const std::size_t n_nodes = rows_base + static_cast<std::size_t>(
                                                  std::popcount(attached));
      for (std::size_t i = 0; i < n_nodes; ++i) uf[i] = static_cast<std::uint32_t>(i);
      auto find = [&](std::uint32_t v) {
        while (uf[v] != v) {
          uf[v] = uf[uf[v]];
          v = uf[v];
        }
        return v;
      };
      // Column entity of a row: its run, or its singleton node.
      auto col_entity = [&](std::uint32_t r) -> std::uint32_t {
        if (sm.run_of_row[r] >= 0) return static_cast<std::uint32_t>(runs_base + sm.run_of_row[r]);
        const std::uint64_t below = attached & ((1ull << r) - 1);
        return static_cast<std::uint32_t>(rows_base + std::popcount(below));
      };

      bool cyclic = false;
      for (std::size_t i = 0; i < st.rows.size() && !cyclic; ++i) {
        const std::uint32_t a = find(st.parts[i]);
        const std::uint32_t b = find(col_entity(st.rows[i]));
        if (a == b) {
          cyclic = true;
        } else {
          uf[std::max(a, b)] = std::min(a, b);
        }
      }
      if (cyclic) continue;

      // Component acceptance: every component must hold a plug (mid-slab) or
      // everything must be one component (final slab).
      std::uint64_t plugged_roots_mask[3] = {0, 0, 0};  // roots < 192
      auto mark = [&](std::uint32_t root) {
        plugged_roots_mask[root >> 6] |= 1ull << (root & 63);
      };
      auto marked = [&](std::uint32_t root) {
        return (plugged_roots_mask[root >> 6] >> (root & 63)) & 1;
      };
      for (std::size_t r = 0; r < slab.R; ++r) {
        if (sm.plugmask >> r & 1) mark(find(col_entity(static_cast<std::uint32_t>(r))));
      }

      bool ok = true;
      std::uint32_t sole_root = static_cast<std::uint32_t>(-1);
      auto check_entity = [&](std::uint32_t node) {
        const std::uint32_t root = find(node);
        if (slab.has_right) {
          if (!marked(root)) ok = false;
        } else {
          if (sole_root == static_cast<std::uint32_t>(-1)) sole_root = root;
          else if (sole_root != root) ok = false;
        }
      };
      for (std::size_t p = 0; p < P && ok; ++p) check_entity(static_cast<std::uint32_t>(p));
      for (std::size_t rn = 0; rn < static_cast<std::size_t>(sm.num_runs) && ok; ++rn) {
        check_entity(static_cast<std::uint32_t>(runs_base + rn));
      }
      for (std::size_t r = 0; r < slab.R && ok; ++r) {
        if (attached >> r & 1) check_entity(col_entity(static_cast<std::uint32_t>(r)));
      }
      if (!ok) continue;

      const Unit new_len = st.len2 + cont + sm.cost2;

      if (!slab.has_right) {
        // Final slab: single terminal pseudo-state under the empty key.
        DpState fin;
        fin.key = "";
        fin.len2 = new_len;
        fin.pred = si;
        fin.vmask = sm.vmask;
        fin.plugmask = 0;
        auto it = index.find(fin.key);
        if (it == index.end()) {
          index.emplace(fin.key, next.size());
          next.push_back(std::move(fin));
        } else {
          DpState& cur = next[it->second];
          const auto cand = std::tuple(fin.len2, fin.vmask, fin.plugmask,
                                       prev[fin.pred].key);
          const auto have = std::tuple(cur.len2, cur.vmask, cur.plugmask,
                                       prev[cur.pred].key);
          if (cand < have) cur = std::move(fin);
        }
        continue;
      }

      // Right pattern: plug rows grouped by component.
      DpState ns;
      ns.len2 = new_len;
      ns.pred = si;
      ns.vmask = sm.vmask;
      ns.plugmask = sm.plugmask;
      ns.points_mask = sm.plugmask;
      std::vector<std::uint32_t> roots;
      for (std::size_t r = 0; r < slab.R; ++r) {
        if (!(sm.plugmask >> r & 1)) continue;
        ns.rows.push_back(static_cast<std::uint32_t>(r));
        roots.push_back(find(col_entity(static_cast<std::uint32_t>(r))));
      }
      // Canonical part ids by first appearance.
      std::map<std::uint32_t, std::uint32_t> renum;
      for (std::uint32_t root : roots) {
        auto [it2, ins] = renum.try_emplace(root, static_cast<std::uint32_t>(renum.size()));
        ns.parts.push_back(it2->second);
      }
      ns.key.reserve(9 + ns.rows.size() * 2);
      for (int b = 0; b < 8; ++b) ns.key.push_back(static_cast<char>(ns.points_mask >> (8 * b) & 0xff));
      for (std::uint32_t pid : ns.parts) ns.key.push_back(static_cast<char>(pid));

      auto it = index.find(ns.key);
      if (it == index.end()) {
        index.emplace(ns.key, next.size());
        next.push_back(std::move(ns));
      } else {
        DpState& cur = next[it->second];
        const auto cand = std::tuple(ns.len2, ns.vmask, ns.plugmask, prev[ns.pred].key);
        const auto have = std::tuple(cur.len2, cur.vmask, cur.plugmask, prev[cur.pred].key);
        if (cand < have) cur = std::move(ns);
      }
    }
  }

  // Deterministic stage order.
  std::vector<std::size_t> order;
  for (const auto& [k, idx] : index) order.push_back(idx);
  TransitionResult out2;
  out2.states.reserve(order.size());
  for (std::size_t idx : order) out2.states.push_back(std::move(next[idx]));
  return out2;
}

}  // namespace

std::vector<SlabStageState> slab_transition(const std::vector<SlabStageState>& prev,
                                            const SlabSpec& slab, std::size_t cap) {
  if (slab.rows_y.size() > kMaxRows) {
    throw std::invalid_argument("slab_transition: too many rows");
  }
  SlabContext ctx;
  ctx.R = slab.rows_y.size();
  for (std::size_t r = 0; r + 1 < slab.rows_y.size(); ++r) {
    ctx.wv.push_back(2 * (slab.rows_y[r + 1] - slab.rows_y[r]));
  }
  ctx.term_mask = slab.terminal_rows;
  ctx.has_left = slab.has_left_wall;
  ctx.has_right = slab.has_right_wall;
  ctx.wl = slab.continuation_weight2;
  ctx.wr = slab.plug_weight2;

  std::vector<DpState> prev_states;
  for (const auto& s : prev) {
    DpState d;
    d.rows = s.pattern.points;
    d.parts = s.pattern.partition;
    for (std::uint32_t r : d.rows) d.points_mask |= 1ull << r;
    d.len2 = s.length2;
    d.key = s.pattern.key();
    prev_states.push_back(std::move(d));
  }
  const auto res = run_transition(prev_states, ctx, cap, kUnitInfinity, 0, 0);
  std::vector<SlabStageState> out;
  for (const auto& s : res.states) {
    SlabStageState o;
    o.pattern = canonical_pattern(0, s.rows, s.parts);
    o.length2 = s.len2;
    out.push_back(std::move(o));
  }
  return out;
}

SparseResult solve_sparse(const PointSet& ps, std::optional<std::size_t> cap_opt) {
  const std::size_t n = ps.size();
  SparseResult result;
  std::size_t cap = 0;
  if (cap_opt) {
    cap = *cap_opt;
    result.report.cap_was_auto = false;
  } else {
    if (!ps.sparseness_k) {
      throw MissingSparsenessK("solve_sparse: cap=auto requires sparseness_k");
    }
    cap = std::min(n, corollary_cap(*ps.sparseness_k, ps.delta, ps.scale));
    result.report.cap_was_auto = true;
  }
  cap = std::min(cap, n);
  result.report.cap_used = cap;

  // Distinct columns with terminal row masks.
  std::vector<Unit> xs, ys;
  for (const Point& p : ps.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t t = xs.size();
  const std::size_t R = ys.size();
  if (R > kMaxRows) {
    throw std::invalid_argument("solve_sparse: more than 64 distinct y lines");
  }
  result.report.stages = t;

  const HananGrid grid = build_hanan_grid(ps);

  // All points coincident: the empty tree.
  if (t == 1 && R == 1) {
    result.solution.length = 0;
    result.report.max_patterns_per_stage = 1;
    return result;
  }

  std::vector<std::uint64_t> term_mask(t, 0);
  for (const Point& p : ps.points) {
    const std::size_t c = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin());
    const std::size_t r = static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin());
    term_mask[c] |= 1ull << r;
  }

  const Unit U2 = 2 * monotone_upper_bound(ps);

  std::vector<std::vector<DpState>> stages(t);
  stages[0].push_back(DpState{});  // empty pattern, zero length
  std::size_t max_patterns = 1;

  std::vector<DpState> final_stage;
  for (std::size_t q = 0; q < t; ++q) {
    SlabContext ctx;
    ctx.R = R;
    for (std::size_t r = 0; r + 1 < R; ++r) ctx.wv.push_back(2 * (ys[r + 1] - ys[r]));
    ctx.term_mask = term_mask[q];
    ctx.has_left = q > 0;
    ctx.has_right = q + 1 < t;
    ctx.wl = q > 0 ? xs[q] - xs[q - 1] : 0;
    ctx.wr = q + 1 < t ? xs[q + 1] - xs[q] : 0;
    // Completion after this slab: the remaining horizontal span beyond the
    // next column, plus one continuation stub per plug into that column.
    const Unit span_lb2 = q + 1 < t ? 2 * (xs[t - 1] - xs[q + 1]) : 0;
    const Unit plug_future_lb = q + 1 < t ? xs[q + 1] - xs[q] : 0;

    auto res = run_transition(stages[q], ctx, cap, U2, span_lb2, plug_future_lb);
    if (q + 1 < t) {
      stages[q + 1] = std::move(res.states);
      max_patterns = std::max(max_patterns, stages[q + 1].size());
      if (stages[q + 1].empty()) {
        throw NoSolution("solve_sparse: no tree satisfies cap " + std::to_string(cap));
      }
    } else {
      final_stage = std::move(res.states);
    }
  }
  if (final_stage.empty()) {
    throw NoSolution("solve_sparse: no tree satisfies cap " + std::to_string(cap));
  }
  result.report.max_patterns_per_stage = max_patterns;

  // Reconstruct: walk backpointers, emitting vertical edges per slab and full
  // horizontal edges at each slab's plug rows.
  const DpState* cur = &final_stage[0];
  std::vector<std::uint32_t> edge_ids;
  for (std::size_t q = t; q-- > 0;) {
    const std::size_t col = grid.col_index(xs[q]);
    for (std::size_t r = 0; r + 1 < R; ++r) {
      if (cur->vmask >> r & 1) edge_ids.push_back(grid.vertical_edge(col, r));
    }
    if (q + 1 < t) {
      for (std::size_t r = 0; r < R; ++r) {
        if (cur->plugmask >> r & 1) edge_ids.push_back(grid.horizontal_edge(col, r));
      }
    }
    if (q > 0) cur = &stages[q][cur->pred];
  }

  const RectTree tree = make_rect_tree(grid, std::move(edge_ids));
  const Unit len2 = final_stage[0].len2;
  if (len2 % 2 != 0) throw std::logic_error("solve_sparse: odd doubled length");
  const Unit len = len2 / 2;
  if (tree_length(tree) != len) {
    throw std::logic_error("solve_sparse: reconstruction length mismatch");
  }
  const auto report = validate_steiner_tree(tree, ps);
  if (!report.valid()) throw std::logic_error("solve_sparse: invalid reconstruction");

  result.solution.length = len;
  result.solution.segments = canonical_segments(tree, ps);

  const auto prof = tonicity(tree, ps);
  result.report.tonicity_profile = prof.per_separator;
  result.report.cap_saturated = prof.max >= static_cast<int>(cap);
  return result;
}

}  // namespace strip_steiner
