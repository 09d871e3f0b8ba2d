#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mwcs/compact_graph.hpp"

namespace mwcs {

/// Result of a solve on a CompactGraph, in local node indices.
struct SubgraphSolution {
  std::vector<int> nodes;  // sorted
  double objective = 0.0;
  bool optimal = false;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t bnb_nodes = 0;
};

struct TreeDpResult {
  std::vector<double> best;  // M(v) for the orientation away from the root
  std::vector<int> witness;  // sorted
  double objective = 0.0;
};

/// Maximum-weight connected subtree containing `root` and every node of
/// `required`. M(v) = w(v) + sum over children u of M(u) when u's subtree holds
/// a required node, max{M(u), 0} otherwise. Throws PreconditionError when
/// `tree` is not a tree.
TreeDpResult tree_dp(const CompactGraph& tree, int root, std::span<const int> required = {});

/// Maximum-weight connected subtree of a tree without roots, in linear time:
/// one bottom-up pass from node 0, answer at the node maximising M(v).
TreeDpResult tree_dp_unrooted(const CompactGraph& tree);

/// Spanning-tree heuristic: Kruskal with edge cost 2 - (x_u + x_v), then the
/// tree DP. `xbar` empty means the all-ones point. With `roots` the tree is
/// solved once from roots[0]; otherwise each component is solved unrooted and
/// the best kept. Throws InfeasibleError when the roots are not connected.
SubgraphSolution primal_heuristic(const CompactGraph& g, std::span<const double> xbar = {},
                                  std::span<const int> roots = {});

/// Greedy path construction from roots[0]. Cheapest paths (entry cost -w on
/// negative nodes) attach the missing roots first, nearest first, then the
/// positive node whose path adds the most weight, gain negative or not, until
/// no positive node is reachable. The tree DP then prunes what did not pay off. Only nodes with `allowed` set are used (empty = all).
/// Throws InfeasibleError when a root cannot be reached.
SubgraphSolution path_heuristic(const CompactGraph& g, std::span<const int> roots,
                                std::span<const char> allowed = {});

/// Minimum spanning forest under the heuristic's edge costs (ties by edge id).
std::vector<std::pair<int, int>> heuristic_spanning_forest(const CompactGraph& g,
                                                           std::span<const double> xbar);

}  // namespace mwcs
