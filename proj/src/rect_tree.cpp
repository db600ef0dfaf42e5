#include "strip_steiner/rect_tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

namespace {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  // Returns false when a and b were already joined (a cycle).
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<std::uint32_t> terminal_vertices(const HananGrid& g, const PointSet& ps) {
  std::vector<std::uint32_t> out;
  out.reserve(ps.points.size());
  for (const Point& p : ps.points) {
    const std::size_t c = g.col_index(p.x);
    const std::size_t r = g.row_index(p.y);
    if (c == HananGrid::npos || r == HananGrid::npos) {
      throw GridMismatch("terminal not on grid");
    }
    out.push_back(g.vertex_id(c, r));
  }
  return out;
}

void require_grid_of(const HananGrid& g, const PointSet& ps) {
  std::vector<Unit> xs, ys;
  for (const Point& p : ps.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (xs != g.xs() || ys != g.ys()) {
    throw GridMismatch("tree grid was not built from this point set");
  }
}

}  // namespace

Segment::Segment(Unit ax, Unit ay, Unit bx, Unit by) : x1(ax), y1(ay), x2(bx), y2(by) {
  if (x1 != x2 && y1 != y2) {
    throw std::invalid_argument("Segment: not axis-parallel");
  }
  if (x2 < x1 || (x1 == x2 && y2 < y1)) {
    std::swap(x1, x2);
    std::swap(y1, y2);
  }
}

RectTree make_rect_tree(const HananGrid& grid, std::vector<std::uint32_t> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());
  if (!edge_ids.empty() && edge_ids.back() >= grid.edges().size()) {
    throw std::out_of_range("make_rect_tree: edge id out of range");
  }
  return RectTree{&grid, std::move(edge_ids)};
}

RectTree tree_from_segments(const HananGrid& grid, const std::vector<Segment>& segs) {
  std::vector<std::uint32_t> ids;
  for (const Segment& s : segs) {
    if (s.length() == 0) continue;
    if (s.horizontal()) {
      const std::size_t r = grid.row_index(s.y1);
      const std::size_t c1 = grid.col_index(s.x1);
      const std::size_t c2 = grid.col_index(s.x2);
      if (r == HananGrid::npos || c1 == HananGrid::npos || c2 == HananGrid::npos) {
        throw GridMismatch("segment endpoint off grid");
      }
      for (std::size_t c = c1; c < c2; ++c) ids.push_back(grid.horizontal_edge(c, r));
    } else {
      const std::size_t c = grid.col_index(s.x1);
      const std::size_t r1 = grid.row_index(s.y1);
      const std::size_t r2 = grid.row_index(s.y2);
      if (c == HananGrid::npos || r1 == HananGrid::npos || r2 == HananGrid::npos) {
        throw GridMismatch("segment endpoint off grid");
      }
      for (std::size_t r = r1; r < r2; ++r) ids.push_back(grid.vertical_edge(c, r));
    }
  }
  return make_rect_tree(grid, std::move(ids));
}

Unit tree_length(const RectTree& t) {
  Unit total = 0;
  for (std::uint32_t id : t.edges) total += t.grid->edges()[id].weight;
  return total;
}

ValidationReport validate_steiner_tree(const RectTree& t, const PointSet& ps) {
  require_grid_of(*t.grid, ps);
  ValidationReport report;
  const auto terms = terminal_vertices(*t.grid, ps);

  // Incidence per vertex.
  std::vector<char> touched(t.grid->vertex_count(), 0);
  Dsu dsu(t.grid->vertex_count());
  bool cyclic = false;
  for (std::uint32_t id : t.edges) {
    const auto& e = t.grid->edges()[id];
    touched[e.a] = touched[e.b] = 1;
    if (!dsu.unite(e.a, e.b)) cyclic = true;
  }
  report.cyclic = cyclic;

  // Every terminal must be an endpoint of some edge; a point set whose
  // terminals all coincide is covered by the empty tree.
  const bool all_coincident =
      std::all_of(terms.begin(), terms.end(),
                  [&](std::uint32_t v) { return v == terms.front(); });
  if (!(t.edges.empty() && all_coincident)) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!touched[terms[i]]) report.uncovered_terminals.push_back(i);
    }
  }

  // One component over touched vertices and covered terminals.
  std::uint32_t root = static_cast<std::uint32_t>(-1);
  bool disconnected = false;
  for (std::uint32_t v = 0; v < touched.size(); ++v) {
    if (!touched[v]) continue;
    if (root == static_cast<std::uint32_t>(-1)) {
      root = dsu.find(v);
    } else if (dsu.find(v) != root) {
      disconnected = true;
    }
  }
  report.disconnected = disconnected;
  return report;
}

TonicityProfile tonicity(const RectTree& t, const PointSet& ps) {
  TonicityProfile prof;
  prof.separator_points = ps.separator_indices();
  prof.per_separator.assign(prof.separator_points.size(), 0);
  for (std::size_t s = 0; s < prof.separator_points.size(); ++s) {
    const Unit abscissa2 = ps.separator_abscissa_doubled(prof.separator_points[s]);
    int count = 0;
    for (std::uint32_t id : t.edges) {
      const auto& e = t.grid->edges()[id];
      if (!e.horizontal) continue;
      const Unit x1_2 = 2 * t.grid->x_of(e.a);
      const Unit x2_2 = 2 * t.grid->x_of(e.b);
      if (x1_2 < abscissa2 && abscissa2 < x2_2) ++count;
    }
    prof.per_separator[s] = count;
    prof.max = std::max(prof.max, count);
  }
  return prof;
}

std::map<std::uint32_t, VertexClass> classify_vertices(const RectTree& t,
                                                       const PointSet& ps) {
  std::map<std::uint32_t, int> h_deg, v_deg;
  for (std::uint32_t id : t.edges) {
    const auto& e = t.grid->edges()[id];
    auto& deg = e.horizontal ? h_deg : v_deg;
    ++deg[e.a];
    ++deg[e.b];
  }
  std::set<std::uint32_t> terms;
  for (std::uint32_t v : terminal_vertices(*t.grid, ps)) terms.insert(v);

  std::set<std::uint32_t> vertices(terms.begin(), terms.end());
  for (const auto& [v, d] : h_deg) vertices.insert(v);
  for (const auto& [v, d] : v_deg) vertices.insert(v);

  std::map<std::uint32_t, VertexClass> out;
  for (std::uint32_t v : vertices) {
    const int h = h_deg.count(v) ? h_deg[v] : 0;
    const int dv = v_deg.count(v) ? v_deg[v] : 0;
    const int deg = h + dv;
    if (terms.count(v)) {
      out[v] = VertexClass::Terminal;
    } else if (deg >= 4) {
      out[v] = VertexClass::Cross;
    } else if (deg == 3) {
      out[v] = VertexClass::TPoint;
    } else if (deg == 2) {
      out[v] = (h == 1 && dv == 1) ? VertexClass::Corner : VertexClass::Interior;
    } else {
      out[v] = VertexClass::SteinerPoint;  // degenerate leaf; valid trees avoid it
    }
  }
  return out;
}

namespace {

// One maximal collinear chain with no terminal in its interior.
struct Chain {
  bool horizontal = false;
  std::size_t line = 0;                 // row for horizontal, col for vertical
  std::vector<std::size_t> positions;   // col (or row) indices of chain vertices
};

std::vector<Chain> complete_segments(const RectTree& t,
                                     const std::set<std::uint32_t>& terms) {
  const HananGrid& g = *t.grid;
  std::vector<char> has(g.edges().size(), 0);
  for (std::uint32_t id : t.edges) has[id] = 1;

  std::vector<Chain> out;
  // Horizontal chains per row.
  for (std::size_t r = 0; r < g.rows(); ++r) {
    std::size_t c = 0;
    while (c + 1 < g.cols()) {
      if (!has[g.horizontal_edge(c, r)]) {
        ++c;
        continue;
      }
      Chain ch{true, r, {c}};
      std::size_t end = c;
      while (end + 1 < g.cols() && has[g.horizontal_edge(end, r)]) {
        ++end;
        ch.positions.push_back(end);
        // Interior terminal ends the complete segment at that vertex.
        if (end + 1 < g.cols() && has[g.horizontal_edge(end, r)] &&
            terms.count(g.vertex_id(end, r))) {
          break;
        }
      }
      out.push_back(std::move(ch));
      c = end;
    }
  }
  // Vertical chains per column.
  for (std::size_t c = 0; c < g.cols(); ++c) {
    std::size_t r = 0;
    while (r + 1 < g.rows()) {
      if (!has[g.vertical_edge(c, r)]) {
        ++r;
        continue;
      }
      Chain ch{false, c, {r}};
      std::size_t end = r;
      while (end + 1 < g.rows() && has[g.vertical_edge(c, end)]) {
        ++end;
        ch.positions.push_back(end);
        if (end + 1 < g.rows() && has[g.vertical_edge(c, end)] &&
            terms.count(g.vertex_id(c, end))) {
          break;
        }
      }
      out.push_back(std::move(ch));
      r = end;
    }
  }
  return out;
}

}  // namespace

std::vector<UShapeWitness> detect_u_shapes(const RectTree& t, const PointSet& ps) {
  const HananGrid& g = *t.grid;
  std::set<std::uint32_t> terms;
  for (std::uint32_t v : terminal_vertices(g, ps)) terms.insert(v);
  std::vector<char> has(g.edges().size(), 0);
  for (std::uint32_t id : t.edges) has[id] = 1;

  const auto chains = complete_segments(t, terms);

  // A prong qualifies when the perpendicular complete segment *ends* at the
  // bar vertex, extending away on the given side.
  auto prong_up = [&](std::size_t c, std::size_t r) {
    return r + 1 < g.rows() && has[g.vertical_edge(c, r)] &&
           (r == 0 || !has[g.vertical_edge(c, r - 1)]);
  };
  auto prong_down = [&](std::size_t c, std::size_t r) {
    return r > 0 && has[g.vertical_edge(c, r - 1)] &&
           (r + 1 >= g.rows() || !has[g.vertical_edge(c, r)]);
  };
  auto prong_right = [&](std::size_t c, std::size_t r) {
    return c + 1 < g.cols() && has[g.horizontal_edge(c, r)] &&
           (c == 0 || !has[g.horizontal_edge(c - 1, r)]);
  };
  auto prong_left = [&](std::size_t c, std::size_t r) {
    return c > 0 && has[g.horizontal_edge(c - 1, r)] &&
           (c + 1 >= g.cols() || !has[g.horizontal_edge(c, r)]);
  };
  auto any_vertical = [&](std::size_t c, std::size_t r) {
    return (r + 1 < g.rows() && has[g.vertical_edge(c, r)]) ||
           (r > 0 && has[g.vertical_edge(c, r - 1)]);
  };
  auto any_horizontal = [&](std::size_t c, std::size_t r) {
    return (c + 1 < g.cols() && has[g.horizontal_edge(c, r)]) ||
           (c > 0 && has[g.horizontal_edge(c - 1, r)]);
  };

  std::vector<UShapeWitness> witnesses;
  for (const Chain& ch : chains) {
    // Attachment points: chain vertices with any perpendicular incidence.
    // Sliding requires the bar piece between two consecutive same-side
    // attachments to be free of every other attachment and of terminals;
    // the attachment vertices themselves must be non-terminals.
    std::vector<std::size_t> attach;
    for (std::size_t p : ch.positions) {
      const bool a = ch.horizontal ? any_vertical(p, ch.line)
                                   : any_horizontal(ch.line, p);
      if (a) attach.push_back(p);
    }
    for (std::size_t t2 = 0; t2 + 1 < attach.size(); ++t2) {
      const std::size_t a = attach[t2];
      const std::size_t b = attach[t2 + 1];
      const std::uint32_t va = ch.horizontal ? g.vertex_id(a, ch.line)
                                             : g.vertex_id(ch.line, a);
      const std::uint32_t vb = ch.horizontal ? g.vertex_id(b, ch.line)
                                             : g.vertex_id(ch.line, b);
      if (terms.count(va) || terms.count(vb)) continue;
      if (ch.horizontal) {
        const std::size_t r = ch.line;
        if (prong_up(a, r) && prong_up(b, r)) {
          witnesses.push_back(UShapeWitness{
              Segment(g.xs()[a], g.ys()[r], g.xs()[b], g.ys()[r]),
              Segment(g.xs()[a], g.ys()[r], g.xs()[a], g.ys()[r + 1]),
              Segment(g.xs()[b], g.ys()[r], g.xs()[b], g.ys()[r + 1]), true});
        }
        if (prong_down(a, r) && prong_down(b, r)) {
          witnesses.push_back(UShapeWitness{
              Segment(g.xs()[a], g.ys()[r], g.xs()[b], g.ys()[r]),
              Segment(g.xs()[a], g.ys()[r - 1], g.xs()[a], g.ys()[r]),
              Segment(g.xs()[b], g.ys()[r - 1], g.xs()[b], g.ys()[r]), false});
        }
      } else {
        const std::size_t c = ch.line;
        if (prong_right(c, a) && prong_right(c, b)) {
          witnesses.push_back(UShapeWitness{
              Segment(g.xs()[c], g.ys()[a], g.xs()[c], g.ys()[b]),
              Segment(g.xs()[c], g.ys()[a], g.xs()[c + 1], g.ys()[a]),
              Segment(g.xs()[c], g.ys()[b], g.xs()[c + 1], g.ys()[b]), true});
        }
        if (prong_left(c, a) && prong_left(c, b)) {
          witnesses.push_back(UShapeWitness{
              Segment(g.xs()[c], g.ys()[a], g.xs()[c], g.ys()[b]),
              Segment(g.xs()[c - 1], g.ys()[a], g.xs()[c], g.ys()[a]),
              Segment(g.xs()[c - 1], g.ys()[b], g.xs()[c], g.ys()[b]), false});
        }
      }
    }
  }
  return witnesses;
}

bool check_parallel_edge_bound(const RectTree& t, const PointSet& ps) {
  const auto seps = ps.separator_indices();
  for (std::size_t a = 0; a < seps.size(); ++a) {
    for (std::size_t b = a + 1; b < seps.size(); ++b) {
      const Unit la = ps.separator_abscissa_doubled(seps[a]);
      const Unit lb = ps.separator_abscissa_doubled(seps[b]);
      int m = 0;
      for (std::uint32_t id : t.edges) {
        const auto& e = t.grid->edges()[id];
        if (!e.horizontal) continue;
        const Unit x1_2 = 2 * t.grid->x_of(e.a);
        const Unit x2_2 = 2 * t.grid->x_of(e.b);
        if (x1_2 < la && lb < x2_2) ++m;
      }
      const Unit bound = 1 + (2 * ps.delta) / (lb - la);
      if (m > bound) return false;
    }
  }
  return true;
}

bool check_wide_separator_monotonicity(const RectTree& t, const PointSet& ps) {
  const auto prof = tonicity(t, ps);
  for (std::size_t s = 0; s < prof.separator_points.size(); ++s) {
    const std::size_t i = prof.separator_points[s];
    if (ps.spacing(i) > ps.delta && prof.per_separator[s] != 1) return false;
  }
  return true;
}

std::vector<Segment> canonical_segments(const RectTree& t, const PointSet& ps) {
  const HananGrid& g = *t.grid;
  const auto classes = classify_vertices(t, ps);
  auto is_interior = [&](std::uint32_t v) {
    auto it = classes.find(v);
    return it != classes.end() && it->second == VertexClass::Interior;
  };

  std::vector<char> has(g.edges().size(), 0);
  for (std::uint32_t id : t.edges) has[id] = 1;

  std::vector<Segment> out;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    std::size_t c = 0;
    while (c + 1 < g.cols()) {
      if (!has[g.horizontal_edge(c, r)]) {
        ++c;
        continue;
      }
      std::size_t end = c + 1;
      while (end + 1 < g.cols() && has[g.horizontal_edge(end, r)] &&
             is_interior(g.vertex_id(end, r))) {
        ++end;
      }
      out.emplace_back(g.xs()[c], g.ys()[r], g.xs()[end], g.ys()[r]);
      c = end;
    }
  }
  for (std::size_t c = 0; c < g.cols(); ++c) {
    std::size_t r = 0;
    while (r + 1 < g.rows()) {
      if (!has[g.vertical_edge(c, r)]) {
        ++r;
        continue;
      }
      std::size_t end = r + 1;
      while (end + 1 < g.rows() && has[g.vertical_edge(c, end)] &&
             is_interior(g.vertex_id(c, end))) {
        ++end;
      }
      out.emplace_back(g.xs()[c], g.ys()[r], g.xs()[c], g.ys()[end]);
      r = end;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace strip_steiner
