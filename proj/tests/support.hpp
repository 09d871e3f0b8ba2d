#pragma once

// Shared helpers for the unit tests and the acceptance runner: small graph
// builders and the independent brute-force checks (PCST over edge subsets,
// separation pairs by deletion).

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "mwcs/compact_graph.hpp"
#include "mwcs/errors.hpp"
#include "mwcs/graph.hpp"
#include "mwcs/oracle.hpp"
#include "mwcs/transforms.hpp"

namespace mwcs::testing {

inline WeightedGraph make_graph(const std::vector<double>& w,
                                const std::vector<std::pair<int, int>>& edges) {
  WeightedGraph g;
  for (double x : w) g.add_node(x);
  for (auto [a, b] : edges) g.add_edge(static_cast<NodeId>(a), static_cast<NodeId>(b));
  return g;
}

inline CompactGraph make_compact(const std::vector<double>& w,
                                 const std::vector<std::pair<int, int>>& edges) {
  return CompactGraph::from_edges(w, edges);
}

inline bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

/// Oracle optimum of the live graph (best nonempty connected set).
struct OracleAnswer {
  std::vector<NodeId> nodes;
  double objective = -std::numeric_limits<double>::infinity();
};

inline OracleAnswer oracle(const WeightedGraph& g, bool allow_empty = false) {
  InducedGraph ig = induce_all(g);
  OracleAnswer out;
  if (ig.graph.size() == 0) {
    out.objective = 0.0;
    return out;
  }
  SubgraphSolution s = brute_force(ig.graph, {}, allow_empty);
  out.nodes = ig.to_ids(s.nodes);
  out.objective = s.objective;
  return out;
}

/// Optimum of a reduced graph mapped back through the trace; the expansion
/// must be connected in `original` and weigh the same there.
struct ReducedCheck {
  bool witness_connected = false;
  bool witness_weight_matches = false;
  double objective = 0.0;
};

inline ReducedCheck check_reduced(const WeightedGraph& original, const WeightedGraph& reduced,
                                  const ReductionTrace& t) {
  ReducedCheck out;
  OracleAnswer r = oracle(reduced);
  auto expanded = expand_solution(t, r.nodes);
  out.objective = r.objective;
  out.witness_connected = !expanded.empty() && is_connected_subset(original, expanded);
  out.witness_weight_matches = near(induced_weight(original, expanded), r.objective, 1e-7);
  return out;
}

/// Best prize-collecting tree by enumerating edge subsets that form a tree,
/// plus every single node.
inline double pcst_brute_force(const PcstInstance& inst) {
  const int n = inst.size();
  const int m = static_cast<int>(inst.edges.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v) best = std::max(best, inst.profit[v]);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    std::vector<char> used(n, 0);
    double value = 0.0;
    int edge_count = 0;
    for (int e = 0; e < m && acyclic; ++e) {
      if (!(mask & (1u << e))) continue;
      auto [a, b] = inst.edges[e];
      int ra = find(a), rb = find(b);
      if (ra == rb) acyclic = false;
      parent[ra] = rb;
      used[a] = used[b] = 1;
      value -= inst.cost[e];
      ++edge_count;
    }
    if (!acyclic) continue;
    int node_count = 0;
    for (int v = 0; v < n; ++v)
      if (used[v]) {
        ++node_count;
        value += inst.profit[v];
      }
    if (node_count != edge_count + 1) continue;  // a forest, not a tree
    best = std::max(best, value);
  }
  return best;
}

/// All unordered pairs {a,b} of `block` whose deletion disconnects the rest.
inline std::vector<std::pair<NodeId, NodeId>> separation_pairs_brute_force(
    const WeightedGraph& g, const std::vector<NodeId>& block) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = i + 1; j < block.size(); ++j) {
      std::vector<NodeId> rest;
      for (NodeId x : block)
        if (x != block[i] && x != block[j]) rest.push_back(x);
      if (!rest.empty() && !is_connected_subset(g, rest)) out.emplace_back(block[i], block[j]);
    }
  return out;
}

inline std::vector<int> indices(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace mwcs::testing
