#pragma once

#include <cstdint>
#include <vector>

#include "strip_steiner/coord.hpp"
#include "strip_steiner/point_set.hpp"

namespace strip_steiner {

// Grid graph over sorted distinct coordinate lines. Vertices are indexed
// row-major: id = row * cols + col. Edges are unit grid-cell edges between
// adjacent lines, weighted by the exact coordinate difference; horizontal
// edges are listed first (row-major), then vertical edges (column-major
// within each row pair), so edge ids are deterministic.
class HananGrid {
 public:
  struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Unit weight = 0;
    bool horizontal = false;
  };

  static HananGrid from_lines(std::vector<Unit> xs, std::vector<Unit> ys);

  std::size_t cols() const { return xs_.size(); }
  std::size_t rows() const { return ys_.size(); }
  std::size_t vertex_count() const { return xs_.size() * ys_.size(); }
  const std::vector<Unit>& xs() const { return xs_; }
  const std::vector<Unit>& ys() const { return ys_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::uint32_t vertex_id(std::size_t col, std::size_t row) const {
    return static_cast<std::uint32_t>(row * xs_.size() + col);
  }
  std::size_t col_of(std::uint32_t v) const { return v % xs_.size(); }
  std::size_t row_of(std::uint32_t v) const { return v / xs_.size(); }
  Unit x_of(std::uint32_t v) const { return xs_[col_of(v)]; }
  Unit y_of(std::uint32_t v) const { return ys_[row_of(v)]; }

  // Index of a coordinate line; returns npos when absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t col_index(Unit x) const;
  std::size_t row_index(Unit y) const;

  // Edge id lookup between horizontally/vertically adjacent vertices;
  // npos_edge when the pair is not grid-adjacent.
  static constexpr std::uint32_t npos_edge = static_cast<std::uint32_t>(-1);
  std::uint32_t horizontal_edge(std::size_t col_left, std::size_t row) const;
  std::uint32_t vertical_edge(std::size_t col, std::size_t row_bottom) const;

 private:
  std::vector<Unit> xs_;
  std::vector<Unit> ys_;
  std::vector<Edge> edges_;
  std::size_t horizontal_count_ = 0;
};

// The grid induced by the distinct x- and y-coordinates of P.
HananGrid build_hanan_grid(const PointSet& ps);

}  // namespace strip_steiner
