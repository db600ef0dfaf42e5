#include "strip_steiner/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

using nlohmann::json;

namespace {

double to_decimal(Unit units, std::int64_t scale) {
  return static_cast<double>(units) / static_cast<double>(scale);
}

}  // namespace

std::string instance_to_json(const InstanceFile& inst) {
  const auto& ps = inst.points;
  json j;
  j["scale"] = ps.scale;
  j["delta"] = to_decimal(ps.delta, ps.scale);
  json pts = json::array();
  for (const Point& p : ps.points) {
    pts.push_back({to_decimal(p.x, ps.scale), to_decimal(p.y, ps.scale)});
  }
  j["points"] = std::move(pts);
  if (ps.sparseness_k) j["sparseness_k"] = *ps.sparseness_k;
  if (inst.generator) {
    j["generator"] = {{"kind", inst.generator->kind},
                      {"seed", inst.generator->seed},
                      {"prng", inst.generator->prng},
                      {"params", inst.generator->params}};
  }
  return j.dump(2) + "\n";
}

InstanceFile instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("scale") || !j.contains("delta") || !j.contains("points")) {
    throw std::invalid_argument("instance: missing scale/delta/points");
  }
  const std::int64_t scale = j.at("scale").get<std::int64_t>();
  const double delta = j.at("delta").get<double>();
  std::vector<std::pair<double, double>> raw;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("instance: each point must be [x, y]");
    }
    raw.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  InstanceFile out;
  out.points = ingest_points(raw, delta, scale);
  if (j.contains("sparseness_k")) {
    out.points.sparseness_k = j.at("sparseness_k").get<int>();
  }
  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    GeneratorMetadata meta;
    meta.kind = g.value("kind", "");
    meta.seed = g.value("seed", std::uint64_t{0});
    meta.prng = g.value("prng", "");
    meta.params = g.value("params", "");
    out.generator = std::move(meta);
  }
  return out;
}

std::string tree_to_json(const TreeFile& tree) {
  json j;
  j["length_units"] = tree.length_units;
  j["scale"] = tree.scale;
  json edges = json::array();
  for (const Segment& s : tree.edges) edges.push_back({s.x1, s.y1, s.x2, s.y2});
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

TreeFile tree_from_json(const std::string& text) {
  const json j = json::parse(text);
  TreeFile out;
  out.length_units = j.at("length_units").get<Unit>();
  out.scale = j.at("scale").get<std::int64_t>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 4) {
      throw std::invalid_argument("tree: each edge must be [x1, y1, x2, y2]");
    }
    out.edges.emplace_back(e[0].get<Unit>(), e[1].get<Unit>(), e[2].get<Unit>(),
                           e[3].get<Unit>());
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace strip_steiner
