#include "strip_steiner/hanan_grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace strip_steiner {

HananGrid HananGrid::from_lines(std::vector<Unit> xs, std::vector<Unit> ys) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (xs.empty() || ys.empty()) {
    throw std::invalid_argument("HananGrid: need at least one line per axis");
  }

  HananGrid g;
  g.xs_ = std::move(xs);
  g.ys_ = std::move(ys);
  const std::size_t C = g.xs_.size();
  const std::size_t R = g.ys_.size();
  g.edges_.reserve(R * (C - 1) + C * (R - 1));
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c + 1 < C; ++c) {
      Edge e;
      e.a = g.vertex_id(c, r);
      e.b = g.vertex_id(c + 1, r);
      e.weight = g.xs_[c + 1] - g.xs_[c];
      e.horizontal = true;
      g.edges_.push_back(e);
    }
  }
  g.horizontal_count_ = g.edges_.size();
  for (std::size_t r = 0; r + 1 < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) {
      Edge e;
      e.a = g.vertex_id(c, r);
      e.b = g.vertex_id(c, r + 1);
      e.weight = g.ys_[r + 1] - g.ys_[r];
      e.horizontal = false;
      g.edges_.push_back(e);
    }
  }
  return g;
}

std::size_t HananGrid::col_index(Unit x) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end() || *it != x) return npos;
  return static_cast<std::size_t>(it - xs_.begin());
}

std::size_t HananGrid::row_index(Unit y) const {
  auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
  if (it == ys_.end() || *it != y) return npos;
  return static_cast<std::size_t>(it - ys_.begin());
}

std::uint32_t HananGrid::horizontal_edge(std::size_t col_left, std::size_t row) const {
  if (col_left + 1 >= xs_.size() || row >= ys_.size()) return npos_edge;
  return static_cast<std::uint32_t>(row * (xs_.size() - 1) + col_left);
}

std::uint32_t HananGrid::vertical_edge(std::size_t col, std::size_t row_bottom) const {
  if (col >= xs_.size() || row_bottom + 1 >= ys_.size()) return npos_edge;
  return static_cast<std::uint32_t>(horizontal_count_ + row_bottom * xs_.size() + col);
}

HananGrid build_hanan_grid(const PointSet& ps) {
  std::vector<Unit> xs, ys;
  xs.reserve(ps.points.size());
  ys.reserve(ps.points.size());
  for (const Point& p : ps.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  return HananGrid::from_lines(std::move(xs), std::move(ys));
}

}  // namespace strip_steiner
