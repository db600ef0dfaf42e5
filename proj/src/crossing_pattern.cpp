#include "strip_steiner/crossing_pattern.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

std::size_t CrossingPattern::part_count() const {
  std::uint32_t mx = 0;
  for (std::uint32_t p : partition) mx = std::max(mx, p + 1);
  return mx;
}

std::string CrossingPattern::key() const {
  std::string k;
  k.reserve(1 + points.size() * 2);
  k.push_back(static_cast<char>(points.size()));
  for (std::uint32_t p : points) {
    k.push_back(static_cast<char>(p & 0xff));
    k.push_back(static_cast<char>(p >> 8 & 0xff));
  }
  for (std::uint32_t p : partition) k.push_back(static_cast<char>(p));
  return k;
}

std::vector<std::vector<std::uint32_t>> CrossingPattern::parts() const {
  std::vector<std::vector<std::uint32_t>> out(part_count());
  for (std::size_t i = 0; i < points.size(); ++i) out[partition[i]].push_back(points[i]);
  return out;
}

CrossingPattern canonical_pattern(std::size_t separator_index,
                                  std::vector<std::uint32_t> points,
                                  std::vector<std::uint32_t> part_ids) {
  if (points.size() != part_ids.size()) {
    throw std::invalid_argument("canonical_pattern: size mismatch");
  }
  // Sort points (carrying part ids), then renumber parts by first appearance.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  CrossingPattern out;
  out.separator_index = separator_index;
  out.points.reserve(points.size());
  out.partition.reserve(points.size());
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (std::size_t idx : order) {
    out.points.push_back(points[idx]);
    auto [it, inserted] =
        renumber.try_emplace(part_ids[idx], static_cast<std::uint32_t>(renumber.size()));
    out.partition.push_back(it->second);
  }
  return out;
}

bool is_noncrossing(const CrossingPattern& p) {
  // Crossing iff parts a..a and b..b interleave: a < b < a' < b'.
  const std::size_t n = p.points.size();
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a2 = b + 1; a2 < n; ++a2) {
      if (p.partition[a2] == p.partition[b]) continue;
      // Does partition[a2]'s part have an element before b and partition[b]'s
      // part an element after a2?
      bool a_before = false;
      for (std::size_t i = 0; i < b; ++i) a_before |= p.partition[i] == p.partition[a2];
      bool b_after = false;
      for (std::size_t i = a2 + 1; i < n; ++i) b_after |= p.partition[i] == p.partition[b];
      if (a_before && b_after) return false;
    }
  }
  return true;
}

std::vector<Unit> crossing_points(const HananGrid& grid, std::size_t separator_index,
                                  const PointSet& ps) {
  if (!ps.has_separator(separator_index)) {
    throw IndexOutOfRange("crossing_points: no separator at index " +
                          std::to_string(separator_index));
  }
  return grid.ys();
}

std::vector<std::vector<std::uint32_t>> enumerate_noncrossing_partitions(std::size_t m) {
  // Restricted growth strings generated recursively (lexicographic order),
  // filtered to non-crossing. Crossing check on the partial string suffices:
  // a crossing always shows up as soon as its fourth element is placed.
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> rgs;
  rgs.reserve(m);
  auto ok_to_place = [&](std::uint32_t part) {
    // Placing `part` at position rgs.size(): crossing iff some other part has
    // elements both before `part`'s last element and after it. With the new
    // element at the end, a crossing appears iff between the previous element
    // of `part` and the end there is an element of a part that also occurs
    // before the previous element of `part`.
    const std::size_t pos = rgs.size();
    std::size_t prev = pos;
    for (std::size_t i = pos; i-- > 0;) {
      if (rgs[i] == part) {
        prev = i;
        break;
      }
    }
    if (prev == pos) return true;  // first occurrence of this part
    for (std::size_t mid = prev + 1; mid < pos; ++mid) {
      if (rgs[mid] == part) continue;
      for (std::size_t before = 0; before < prev; ++before) {
        if (rgs[before] == rgs[mid]) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self) -> void {
    if (rgs.size() == m) {
      out.push_back(rgs);
      return;
    }
    std::uint32_t mx = 0;
    for (std::uint32_t v : rgs) mx = std::max(mx, v + 1);
    for (std::uint32_t part = 0; part <= mx; ++part) {
      if (!ok_to_place(part)) continue;
      rgs.push_back(part);
      self(self);
      rgs.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<CrossingPattern> enumerate_viable_patterns(const HananGrid& grid,
                                                       std::size_t separator_index,
                                                       std::size_t cap) {
  return enumerate_viable_patterns(grid.rows(), separator_index, cap);
}

std::vector<CrossingPattern> enumerate_viable_patterns(std::size_t row_count,
                                                       std::size_t separator_index,
                                                       std::size_t cap) {
  const std::size_t R = row_count;
  std::vector<CrossingPattern> out;
  std::vector<std::uint32_t> subset;
  // Subsets in ascending size, lexicographic within size; partitions per size
  // precomputed once.
  std::vector<std::vector<std::vector<std::uint32_t>>> parts_by_size(
      std::min(cap, R) + 1);
  for (std::size_t m = 0; m <= std::min(cap, R); ++m) {
    parts_by_size[m] = enumerate_noncrossing_partitions(m);
  }
  auto emit = [&](const std::vector<std::uint32_t>& rows) {
    for (const auto& part : parts_by_size[rows.size()]) {
      CrossingPattern p;
      p.separator_index = separator_index;
      p.points = rows;
      p.partition = part;
      out.push_back(std::move(p));
    }
  };
  // Iterative subset enumeration by size.
  for (std::size_t m = 0; m <= std::min(cap, R); ++m) {
    std::vector<std::uint32_t> rows(m);
    std::iota(rows.begin(), rows.end(), 0u);
    while (true) {
      emit(rows);
      if (m == 0) break;
      // next combination
      std::size_t i = m;
      while (i > 0 && rows[i - 1] == R - m + (i - 1)) --i;
      if (i == 0) break;
      ++rows[i - 1];
      for (std::size_t j = i; j < m; ++j) rows[j] = rows[j - 1] + 1;
    }
  }
  return out;
}

CrossingPattern pattern_of_tree(const RectTree& t, const PointSet& ps,
                                std::size_t separator_index, Side side) {
  if (!ps.has_separator(separator_index)) {
    throw IndexOutOfRange("pattern_of_tree: no separator at index " +
                          std::to_string(separator_index));
  }
  const HananGrid& g = *t.grid;
  const Unit abscissa2 = ps.separator_abscissa_doubled(separator_index);

  // Union-find over grid vertices plus one node per crossing row.
  const std::size_t V = g.vertex_count();
  std::vector<std::uint32_t> parent(V + g.rows());
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

  std::vector<char> crossing_row(g.rows(), 0);
  for (std::uint32_t id : t.edges) {
    const auto& e = g.edges()[id];
    const Unit xa2 = 2 * g.x_of(e.a);
    const Unit xb2 = 2 * g.x_of(e.b);
    if (e.horizontal && xa2 < abscissa2 && abscissa2 < xb2) {
      // Crossing edge: connect the kept endpoint to the crossing-row node.
      const std::size_t row = g.row_of(e.a);
      crossing_row[row] = 1;
      const std::uint32_t row_node = static_cast<std::uint32_t>(V + row);
      unite(side == Side::Left ? e.a : e.b, row_node);
      continue;
    }
    // Keep edges fully on the chosen side.
    const bool fully_left = xa2 < abscissa2 && xb2 < abscissa2;
    const bool fully_right = xa2 > abscissa2 && xb2 > abscissa2;
    if ((side == Side::Left && fully_left) || (side == Side::Right && fully_right)) {
      unite(e.a, e.b);
    }
  }

  std::vector<std::uint32_t> rows, roots;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (!crossing_row[r]) continue;
    rows.push_back(static_cast<std::uint32_t>(r));
    roots.push_back(find(static_cast<std::uint32_t>(V + r)));
  }
  return canonical_pattern(separator_index, std::move(rows), std::move(roots));
}

SlabComposition compose_across_slab(const CrossingPattern& left,
                                    const std::vector<Unit>& row_ys,
                                    const RectTree& slab,
                                    Unit right_abscissa_doubled) {
  const HananGrid& g = *slab.grid;
  const std::size_t V = g.vertex_count();
  const std::size_t P = left.part_count();
  // Nodes: grid vertices, then left parts, then right crossing rows.
  std::vector<std::uint32_t> parent(V + P + row_ys.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  bool acyclic = true;
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      acyclic = false;
      return;
    }
    parent[std::max(a, b)] = std::min(a, b);
  };

  // Left pattern points sit on the slab's left boundary: attach each to the
  // grid vertex at its row on the leftmost column.
  std::vector<char> left_point_touched(left.points.size(), 0);
  for (std::size_t i = 0; i < left.points.size(); ++i) {
    const Unit y = row_ys[left.points[i]];
    const std::size_t row = g.row_index(y);
    if (row == HananGrid::npos) continue;
    const std::uint32_t v = g.vertex_id(0, row);
    // A continuing edge at this row must touch the leftmost column vertex.
    bool touched = false;
    for (std::uint32_t id : slab.edges) {
      const auto& e = g.edges()[id];
      if (e.a == v || e.b == v) {
        touched = true;
        break;
      }
    }
    left_point_touched[i] = touched;
    unite(static_cast<std::uint32_t>(V + left.partition[i]), v);
  }

  std::vector<char> right_cross(row_ys.size(), 0);
  for (std::uint32_t id : slab.edges) {
    const auto& e = g.edges()[id];
    const Unit xa2 = 2 * g.x_of(e.a);
    const Unit xb2 = 2 * g.x_of(e.b);
    if (e.horizontal && xa2 < right_abscissa_doubled && right_abscissa_doubled < xb2) {
      // Crosses out to the right: bind the left endpoint to the row node.
      const Unit y = g.y_of(e.a);
      const auto it = std::lower_bound(row_ys.begin(), row_ys.end(), y);
      if (it != row_ys.end() && *it == y) {
        const std::size_t row = static_cast<std::size_t>(it - row_ys.begin());
        right_cross[row] = 1;
        unite(e.a, static_cast<std::uint32_t>(V + P + row));
      }
      continue;
    }
    if (xb2 < right_abscissa_doubled) unite(e.a, e.b);
  }

  SlabComposition out;
  out.acyclic = acyclic;
  out.feasible = std::all_of(left_point_touched.begin(), left_point_touched.end(),
                             [](char c) { return c != 0; });
  std::vector<std::uint32_t> rows, roots;
  for (std::size_t r = 0; r < row_ys.size(); ++r) {
    if (!right_cross[r]) continue;
    rows.push_back(static_cast<std::uint32_t>(r));
    roots.push_back(find(static_cast<std::uint32_t>(V + P + r)));
  }
  out.right = canonical_pattern(left.separator_index + 1, std::move(rows), std::move(roots));
  return out;
}

}  // namespace strip_steiner
