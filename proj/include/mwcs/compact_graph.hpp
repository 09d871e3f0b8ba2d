#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mwcs/graph.hpp"

namespace mwcs {

/// Immutable index-based graph used by the solver kernels. Nodes are
/// 0..size()-1; adjacency lists are sorted.
struct CompactGraph {
  std::vector<double> weight;
  std::vector<std::vector<int>> adj;

  int size() const { return static_cast<int>(weight.size()); }
  std::size_t edge_count() const;
  /// Edges (a,b) with a < b in lexicographic order; position = edge id.
  std::vector<std::pair<int, int>> edges() const;
  bool has_edge(int a, int b) const;

  static CompactGraph from_edges(std::vector<double> weights,
                                 std::span<const std::pair<int, int>> edges);
};

/// Induced subgraph of a WeightedGraph together with the id of each local node.
struct InducedGraph {
  CompactGraph graph;
  std::vector<NodeId> ids;  // sorted

  int local(NodeId v) const;  // -1 if absent
  std::vector<NodeId> to_ids(std::span<const int> locals) const;
};

InducedGraph induce(const WeightedGraph& g, std::span<const NodeId> nodes);
InducedGraph induce_all(const WeightedGraph& g);

/// Subgraph of `g` induced by `keep` (mask), with the new->old index map.
std::pair<CompactGraph, std::vector<int>> induce(const CompactGraph& g, const std::vector<char>& keep);

bool is_connected_subset(const CompactGraph& g, std::span<const int> nodes);
double induced_weight(const CompactGraph& g, std::span<const int> nodes);
/// Components as sorted index lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const CompactGraph& g);

}  // namespace mwcs
