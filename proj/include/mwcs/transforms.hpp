#pragma once

#include <utility>
#include <vector>

#include "mwcs/compact_graph.hpp"

namespace mwcs {

/// Prize-collecting Steiner tree instance: node profits and edge costs, both
/// nonnegative.
struct PcstInstance {
  std::vector<double> profit;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> cost;  // per edge

  int size() const { return static_cast<int>(profit.size()); }
};

/// Edge-splitting reduction. Node v keeps index v with weight p(v); edge e
/// becomes node size()+e of weight -c(e) joined to both endpoints.
struct SplitMwcs {
  CompactGraph graph;
  std::vector<std::pair<int, int>> split;  // split node size()+e -> edge e
  int original_nodes = 0;

  bool is_split(int v) const { return v >= original_nodes; }
  int edge_of(int v) const { return v - original_nodes; }
};

SplitMwcs pcst_to_mwcs(const PcstInstance& inst);

struct PcstTree {
  std::vector<int> nodes;  // sorted
  std::vector<int> edges;  // edge indices, sorted
  double profit = 0.0;     // sum of node profits minus sum of edge costs
};

/// Maps a connected MWCS solution of the split graph back to a tree. When the
/// selected edges close cycles, the spanning tree preferring small edge
/// indices is kept. Throws PreconditionError when a split node is selected
/// without both endpoints.
PcstTree mwcs_solution_to_pcst(const std::vector<int>& solution, const SplitMwcs& split,
                               const PcstInstance& inst);

/// Reverse reduction: with w' = min(0, min weight), p(v) = w(v) - w' and every
/// edge costs -w'. A tree T then has p(T) = w(V(T)) - w'.
struct MwcsAsPcst {
  PcstInstance instance;
  double offset = 0.0;  // w'
};

MwcsAsPcst mwcs_to_pcst(const CompactGraph& g);

}  // namespace mwcs
