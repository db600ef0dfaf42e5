#include "strip_steiner/oracle.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

namespace {

WeightedGraph graph_of_grid(const HananGrid& g) {
  WeightedGraph wg;
  wg.vertex_count = g.vertex_count();
  wg.edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) wg.add_edge(e.a, e.b, e.weight);
  return wg;
}

SteinerSolution solution_from_grid_edges(const HananGrid& g,
                                         const std::vector<std::uint32_t>& ids,
                                         Unit length) {
  SteinerSolution s;
  s.length = length;
  s.segments.reserve(ids.size());
  for (std::uint32_t id : ids) {
    const auto& e = g.edges()[id];
    s.segments.emplace_back(g.x_of(e.a), g.y_of(e.a), g.x_of(e.b), g.y_of(e.b));
  }
  std::sort(s.segments.begin(), s.segments.end());
  return s;
}

}  // namespace

SteinerInstance instance_from_points(const PointSet& ps) {
  SteinerInstance inst{build_hanan_grid(ps), {}};
  inst.terminals.reserve(ps.points.size());
  for (const Point& p : ps.points) {
    inst.terminals.push_back(
        inst.grid.vertex_id(inst.grid.col_index(p.x), inst.grid.row_index(p.y)));
  }
  std::sort(inst.terminals.begin(), inst.terminals.end());
  inst.terminals.erase(std::unique(inst.terminals.begin(), inst.terminals.end()),
                       inst.terminals.end());
  return inst;
}

SteinerSolution dreyfus_wagner(const SteinerInstance& inst, std::size_t terminal_limit) {
  const WeightedGraph wg = graph_of_grid(inst.grid);
  const GraphSteinerResult r = dreyfus_wagner_graph(wg, inst.terminals, terminal_limit);
  return solution_from_grid_edges(inst.grid, r.edge_ids, r.length);
}

SteinerSolution brute_force_mrst(const SteinerInstance& inst) {
  const WeightedGraph wg = graph_of_grid(inst.grid);
  const GraphSteinerResult r = brute_force_graph(wg, inst.terminals);
  return solution_from_grid_edges(inst.grid, r.edge_ids, r.length);
}

SteinerSolution oracle_solve(const PointSet& ps, std::size_t terminal_limit) {
  return dreyfus_wagner(instance_from_points(ps), terminal_limit);
}

SteinerSolution brute_solve(const PointSet& ps) {
  return brute_force_mrst(instance_from_points(ps));
}

BoundaryResult solve_with_boundary(const std::vector<Point>& slice,
                                   const std::vector<Unit>& rows_y,
                                   const std::optional<Boundary>& left,
                                   const std::optional<Boundary>& right,
                                   std::size_t terminal_limit) {
  // Coordinate lines, doubled units.
  std::vector<Unit> cols, rows;
  for (const Point& p : slice) {
    cols.push_back(2 * p.x);
    rows.push_back(2 * p.y);
  }
  auto add_pattern_rows = [&](const std::optional<Boundary>& b) {
    if (!b) return;
    for (std::uint32_t pt : b->pattern.points) {
      if (pt >= rows_y.size()) throw std::out_of_range("pattern row out of range");
      rows.push_back(2 * rows_y[pt]);
    }
  };
  add_pattern_rows(left);
  add_pattern_rows(right);
  if (left) cols.push_back(left->abscissa_doubled);
  if (right) cols.push_back(right->abscissa_doubled);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  BoundaryResult out;
  if (right) out.realized_right.separator_index = right->pattern.separator_index;
  if (cols.empty() || rows.empty()) {
    out.feasible = true;  // nothing to connect
    return out;
  }

  const std::size_t C = cols.size();
  const std::size_t R = rows.size();
  auto vid = [C](std::size_t c, std::size_t r) {
    return static_cast<std::uint32_t>(r * C + c);
  };
  auto col_of = [&](Unit x2) {
    return static_cast<std::size_t>(
        std::lower_bound(cols.begin(), cols.end(), x2) - cols.begin());
  };
  auto row_of = [&](Unit y2) {
    return static_cast<std::size_t>(
        std::lower_bound(rows.begin(), rows.end(), y2) - rows.begin());
  };
  const std::size_t left_col = left ? col_of(left->abscissa_doubled) : HananGrid::npos;
  const std::size_t right_col = right ? col_of(right->abscissa_doubled) : HananGrid::npos;

  WeightedGraph wg;
  wg.vertex_count = C * R;
  struct EdgeInfo {
    Segment seg;        // doubled coordinates
    int virtual_side;   // 0 real, 1 left-virtual, 2 right-virtual
  };
  std::vector<EdgeInfo> info;
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c + 1 < C; ++c) {
      wg.add_edge(vid(c, r), vid(c + 1, r), cols[c + 1] - cols[c]);
      info.push_back({Segment(cols[c], rows[r], cols[c + 1], rows[r]), 0});
    }
  }
  for (std::size_t c = 0; c < C; ++c) {
    if (c == left_col || c == right_col) continue;  // walls carry no verticals
    for (std::size_t r = 0; r + 1 < R; ++r) {
      wg.add_edge(vid(c, r), vid(c, r + 1), rows[r + 1] - rows[r]);
      info.push_back({Segment(cols[c], rows[r], cols[c], rows[r + 1]), 0});
    }
  }

  std::vector<std::uint32_t> terminals;
  for (const Point& p : slice) {
    terminals.push_back(vid(col_of(2 * p.x), row_of(2 * p.y)));
  }
  auto add_boundary = [&](const std::optional<Boundary>& b, std::size_t col, int side) {
    if (!b) return;
    for (std::uint32_t pt : b->pattern.points) {
      terminals.push_back(vid(col, row_of(2 * rows_y[pt])));
    }
    // Chain each part with zero-weight virtual edges, in y-order.
    for (const auto& part : b->pattern.parts()) {
      std::vector<Unit> ys;
      for (std::uint32_t pt : part) ys.push_back(rows_y[pt]);
      std::sort(ys.begin(), ys.end());
      for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        wg.add_edge(vid(col, row_of(2 * ys[i])), vid(col, row_of(2 * ys[i + 1])), 0);
        info.push_back({Segment(cols[col], 2 * ys[i], cols[col], 2 * ys[i + 1]), side});
      }
    }
  };
  add_boundary(left, left_col, 1);
  add_boundary(right, right_col, 2);

  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (terminals.empty()) {
    out.feasible = true;
    return out;
  }

  GraphSteinerResult res;
  try {
    res = dreyfus_wagner_graph(wg, terminals, terminal_limit);
  } catch (const DisconnectedGrid&) {
    out.feasible = false;  // encodes length = infinity
    return out;
  }

  out.feasible = true;
  out.length_doubled = res.length;
  for (std::uint32_t id : res.edge_ids) {
    if (info[id].virtual_side == 0) out.segments_doubled.push_back(info[id].seg);
  }
  std::sort(out.segments_doubled.begin(), out.segments_doubled.end());

  if (!right) return out;

  // Realized pattern at the right wall: connectivity over chosen real edges
  // plus every left virtual chain (they stand in for the left forest).
  std::vector<std::uint32_t> parent(wg.vertex_count);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::vector<char> chosen(wg.edges.size(), 0);
  for (std::uint32_t id : res.edge_ids) chosen[id] = 1;
  std::vector<char> stubbed(R, 0);  // right-wall rows reached by a chosen stub
  for (std::uint32_t id = 0; id < wg.edges.size(); ++id) {
    const bool is_left_virtual = info[id].virtual_side == 1;
    if (!(is_left_virtual || (chosen[id] && info[id].virtual_side == 0))) continue;
    unite(wg.edges[id].a, wg.edges[id].b);
    if (chosen[id] && info[id].virtual_side == 0) {
      const std::size_t ca = col_of(info[id].seg.x1);
      const std::size_t cb = col_of(info[id].seg.x2);
      if (info[id].seg.horizontal() && cb == right_col && ca != cb) {
        stubbed[row_of(info[id].seg.y1)] = 1;
      }
    }
  }
  std::vector<std::uint32_t> pts, roots;
  for (std::size_t r = 0; r < R; ++r) {
    if (!stubbed[r]) continue;
    const Unit y = rows[r] / 2;
    const auto it = std::lower_bound(rows_y.begin(), rows_y.end(), y);
    if (it == rows_y.end() || *it != y) {
      throw std::logic_error("solve_with_boundary: crossing row not in row list");
    }
    pts.push_back(static_cast<std::uint32_t>(it - rows_y.begin()));
    roots.push_back(find(vid(right_col, r)));
  }
  const std::size_t sep = out.realized_right.separator_index;
  out.realized_right = canonical_pattern(sep, std::move(pts), std::move(roots));
  return out;
}

PaceInstance parse_pace_gr(std::istream& in) {
  PaceInstance inst;
  std::string line;
  std::size_t nodes = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "Nodes") {
      ls >> nodes;
      inst.graph.vertex_count = nodes;
    } else if (tok == "E") {
      std::uint32_t a = 0, b = 0;
      Unit w = 0;
      if (!(ls >> a >> b >> w) || a == 0 || b == 0 || a > nodes || b > nodes || w < 0) {
        throw std::invalid_argument("parse_pace_gr: bad edge line: " + line);
      }
      inst.graph.add_edge(a - 1, b - 1, w);
    } else if (tok == "T") {
      std::uint32_t t = 0;
      if (!(ls >> t) || t == 0 || t > nodes) {
        throw std::invalid_argument("parse_pace_gr: bad terminal line: " + line);
      }
      inst.terminals.push_back(t - 1);
    }
  }
  if (inst.graph.vertex_count == 0 || inst.terminals.empty()) {
    throw std::invalid_argument("parse_pace_gr: missing Nodes or Terminals");
  }
  std::sort(inst.terminals.begin(), inst.terminals.end());
  inst.terminals.erase(std::unique(inst.terminals.begin(), inst.terminals.end()),
                       inst.terminals.end());
  return inst;
}

}  // namespace strip_steiner
