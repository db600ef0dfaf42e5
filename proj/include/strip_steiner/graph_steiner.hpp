#pragma once

#include <cstdint>
#include <vector>

#include "strip_steiner/coord.hpp"

namespace strip_steiner {

// Minimal edge-weighted undirected graph for the exact Steiner solvers.
// Weights must be >= 0; zero-weight edges are allowed.
struct WeightedGraph {
  struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Unit weight = 0;
  };
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  std::uint32_t add_edge(std::uint32_t a, std::uint32_t b, Unit w) {
    edges.push_back({a, b, w});
    return static_cast<std::uint32_t>(edges.size() - 1);
  }
};

struct GraphSteinerResult {
  Unit length = 0;
  std::vector<std::uint32_t> edge_ids;  // sorted
};

// Exact Steiner tree by dynamic programming over terminal subsets with
// shortest-path merge steps. Reconstructs an optimal edge set.
// Throws TooManyTerminals (limit on |terminals|) and DisconnectedGrid.
GraphSteinerResult dreyfus_wagner_graph(const WeightedGraph& g,
                                        const std::vector<std::uint32_t>& terminals,
                                        std::size_t terminal_limit = 16);

// Exhaustive scan of all edge subsets; minimum-length connected acyclic
// subgraph spanning the terminals. Throws TooManyEdges when |edges| > 26.
GraphSteinerResult brute_force_graph(const WeightedGraph& g,
                                     const std::vector<std::uint32_t>& terminals);

// All optimal edge subsets (used by representative-set soundness checks).
std::vector<GraphSteinerResult> brute_force_all_optima(
    const WeightedGraph& g, const std::vector<std::uint32_t>& terminals);

}  // namespace strip_steiner
