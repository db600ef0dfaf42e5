#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strip_steiner/point_set.hpp"
#include "strip_steiner/random_model.hpp"
#include "strip_steiner/rect_tree.hpp"

namespace strip_steiner {

// Instance file: {"scale": int, "delta": number, "points": [[x,y],...]} with
// coordinates as decimals at the given scale, plus optional generator
// metadata. Tree file: {"length_units": int, "scale": int,
// "edges": [[x1,y1,x2,y2],...]} in integer units.

struct InstanceFile {
  PointSet points;
  std::optional<GeneratorMetadata> generator;
};

struct TreeFile {
  Unit length_units = 0;
  std::int64_t scale = 1;
  std::vector<Segment> edges;
};

std::string instance_to_json(const InstanceFile& inst);
InstanceFile instance_from_json(const std::string& text);

std::string tree_to_json(const TreeFile& tree);
TreeFile tree_from_json(const std::string& text);

// Atomic file helpers (write to a temp file, then rename).
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace strip_steiner
