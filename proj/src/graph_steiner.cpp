#include "strip_steiner/graph_steiner.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "strip_steiner/errors.hpp"

namespace strip_steiner {

namespace {

struct Adjacency {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> at;  // (neighbour, edge id)
  explicit Adjacency(const WeightedGraph& g) : at(g.vertex_count) {
    for (std::uint32_t id = 0; id < g.edges.size(); ++id) {
      const auto& e = g.edges[id];
      at[e.a].push_back({e.b, id});
      at[e.b].push_back({e.a, id});
    }
  }
};

struct SmallDsu {
  std::vector<std::uint32_t> parent;
  explicit SmallDsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

GraphSteinerResult dreyfus_wagner_graph(const WeightedGraph& g,
                                        const std::vector<std::uint32_t>& terminals,
                                        std::size_t terminal_limit) {
  if (terminals.empty()) throw std::invalid_argument("dreyfus_wagner: no terminals");
  if (terminals.size() > terminal_limit) {
    throw TooManyTerminals("dreyfus_wagner: " + std::to_string(terminals.size()) +
                           " terminals exceed limit " + std::to_string(terminal_limit));
  }

  // Distinct terminal vertices; coincident terminals cost nothing extra.
  std::vector<std::uint32_t> terms = terminals;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  const std::size_t k = terms.size();
  if (k == 1) return {0, {}};

  const std::size_t V = g.vertex_count;
  const Adjacency adj(g);
  const std::uint32_t root = terms.back();
  const std::size_t nsub = k - 1;  // subsets over terms[0..k-2]
  const std::size_t masks = std::size_t{1} << nsub;

  // dp[S][v]: min length of a tree connecting {terms[i] : i in S} and v.
  // Backpointers: split mask (0 = edge step), predecessor vertex.
  std::vector<Unit> dp(masks * V, kUnitInfinity);
  std::vector<std::uint32_t> bp_split(masks * V, 0);
  std::vector<std::uint32_t> bp_vertex(masks * V, static_cast<std::uint32_t>(-1));
  auto idx = [V](std::size_t S, std::uint32_t v) { return S * V + v; };

  using QItem = std::pair<Unit, std::uint32_t>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;

  auto dijkstra = [&](std::size_t S) {
    for (std::uint32_t v = 0; v < V; ++v) {
      if (dp[idx(S, v)] < kUnitInfinity) pq.push({dp[idx(S, v)], v});
    }
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d != dp[idx(S, v)]) continue;
      for (auto [u, eid] : adj.at[v]) {
        const Unit nd = d + g.edges[eid].weight;
        if (nd < dp[idx(S, u)]) {
          dp[idx(S, u)] = nd;
          bp_split[idx(S, u)] = 0;
          bp_vertex[idx(S, u)] = v;
          pq.push({nd, u});
        }
      }
    }
  };

  for (std::size_t i = 0; i < nsub; ++i) {
    const std::size_t S = std::size_t{1} << i;
    dp[idx(S, terms[i])] = 0;
    dijkstra(S);
  }
  for (std::size_t S = 1; S < masks; ++S) {
    if ((S & (S - 1)) == 0) continue;  // singletons done
    for (std::uint32_t v = 0; v < V; ++v) {
      // Split into proper sub-subsets; enumerate the half containing lowest bit.
      const std::size_t low = S & (~S + 1);
      for (std::size_t T = (S - 1) & S; T > 0; T = (T - 1) & S) {
        if (!(T & low)) continue;
        const Unit cand = (dp[idx(T, v)] >= kUnitInfinity || dp[idx(S ^ T, v)] >= kUnitInfinity)
                              ? kUnitInfinity
                              : dp[idx(T, v)] + dp[idx(S ^ T, v)];
        if (cand < dp[idx(S, v)]) {
          dp[idx(S, v)] = cand;
          bp_split[idx(S, v)] = static_cast<std::uint32_t>(T);
          bp_vertex[idx(S, v)] = v;
        }
      }
    }
    dijkstra(S);
  }

  const std::size_t full = masks - 1;
  if (dp[idx(full, root)] >= kUnitInfinity) {
    throw DisconnectedGrid("dreyfus_wagner: terminals are not connected in the graph");
  }

  // Reconstruct edge set.
  std::set<std::uint32_t> chosen;
  std::vector<std::pair<std::size_t, std::uint32_t>> stack{{full, root}};
  while (!stack.empty()) {
    auto [S, v] = stack.back();
    stack.pop_back();
    if ((S & (S - 1)) == 0 && v == terms[std::countr_zero(S)]) continue;  // base
    const std::uint32_t split = bp_split[idx(S, v)];
    if (split != 0) {
      stack.push_back({split, v});
      stack.push_back({S ^ split, v});
    } else {
      const std::uint32_t prev = bp_vertex[idx(S, v)];
      // Find the relaxing edge prev->v consistent with the dp values.
      std::uint32_t chosen_eid = static_cast<std::uint32_t>(-1);
      for (auto [u, eid] : adj.at[v]) {
        if (u == prev && dp[idx(S, prev)] + g.edges[eid].weight == dp[idx(S, v)]) {
          chosen_eid = eid;
          break;
        }
      }
      if (chosen_eid == static_cast<std::uint32_t>(-1)) {
        throw std::logic_error("dreyfus_wagner: backpointer reconstruction failed");
      }
      chosen.insert(chosen_eid);
      stack.push_back({S, prev});
    }
  }

  GraphSteinerResult res;
  res.length = dp[idx(full, root)];
  res.edge_ids.assign(chosen.begin(), chosen.end());
  return res;
}

namespace {

GraphSteinerResult check_subset(const WeightedGraph& g,
                                const std::vector<std::uint32_t>& terms,
                                std::uint32_t mask) {
  GraphSteinerResult r;
  r.length = kUnitInfinity;
  SmallDsu dsu(g.vertex_count);
  Unit len = 0;
  for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    const auto& e = g.edges[i];
    if (!dsu.unite(e.a, e.b)) return r;  // cyclic
    len += e.weight;
  }
  const std::uint32_t root = dsu.find(terms[0]);
  for (std::uint32_t t : terms) {
    if (dsu.find(t) != root) return r;
  }
  // Terminals must be endpoints of chosen edges (unless all coincide).
  std::vector<char> touched(g.vertex_count, 0);
  for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    touched[g.edges[i].a] = touched[g.edges[i].b] = 1;
  }
  bool all_same = true;
  for (std::uint32_t t : terms) all_same = all_same && t == terms[0];
  if (!(mask == 0 && all_same)) {
    for (std::uint32_t t : terms) {
      if (!touched[t]) return r;
    }
  }
  r.length = len;
  for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
    if (mask >> i & 1) r.edge_ids.push_back(i);
  }
  return r;
}

void require_brute_forceable(const WeightedGraph& g) {
  if (g.edges.size() > 26) {
    throw TooManyEdges("brute force limited to 26 edges, got " +
                       std::to_string(g.edges.size()));
  }
}

}  // namespace

GraphSteinerResult brute_force_graph(const WeightedGraph& g,
                                     const std::vector<std::uint32_t>& terminals) {
  if (terminals.empty()) throw std::invalid_argument("brute_force: no terminals");
  require_brute_forceable(g);

  bool all_same = true;
  for (std::uint32_t t : terminals) all_same = all_same && t == terminals[0];
  if (all_same) return {0, {}};

  const std::uint32_t E = static_cast<std::uint32_t>(g.edges.size());
  // Gray-code walk keeps the running length O(1) per subset.
  std::uint32_t gray = 0;
  Unit len = 0;
  GraphSteinerResult best;
  best.length = kUnitInfinity;

  std::vector<std::uint32_t> inc_mask;  // incident edges per terminal
  for (std::uint32_t t : terminals) {
    std::uint32_t m = 0;
    for (std::uint32_t i = 0; i < E; ++i) {
      if (g.edges[i].a == t || g.edges[i].b == t) m |= 1u << i;
    }
    inc_mask.push_back(m);
  }

  const std::uint64_t total = std::uint64_t{1} << E;
  for (std::uint64_t it = 1; it < total; ++it) {
    const std::uint32_t bit = static_cast<std::uint32_t>(std::countr_zero(it));
    gray ^= 1u << bit;
    len += (gray >> bit & 1) ? g.edges[bit].weight : -g.edges[bit].weight;
    if (len >= best.length) continue;
    bool covers = true;
    for (std::uint32_t m : inc_mask) {
      if (!(gray & m)) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    GraphSteinerResult cand = check_subset(g, terminals, gray);
    if (cand.length < best.length) best = std::move(cand);
  }
  if (best.length >= kUnitInfinity) {
    throw DisconnectedGrid("brute_force: no connected subset spans the terminals");
  }
  return best;
}

std::vector<GraphSteinerResult> brute_force_all_optima(
    const WeightedGraph& g, const std::vector<std::uint32_t>& terminals) {
  if (terminals.empty()) throw std::invalid_argument("brute_force: no terminals");
  require_brute_forceable(g);

  const Unit opt = brute_force_graph(g, terminals).length;
  std::vector<GraphSteinerResult> out;
  const std::uint64_t total = std::uint64_t{1} << g.edges.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    GraphSteinerResult cand = check_subset(g, terminals, static_cast<std::uint32_t>(mask));
    if (cand.length == opt) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace strip_steiner
