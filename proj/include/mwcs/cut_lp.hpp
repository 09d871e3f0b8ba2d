#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "mwcs/compact_graph.hpp"

namespace mwcs {

/// Directed-cut relaxation of the rooted subproblems of one search, on a fixed
/// Steiner arborescence network: arc u->v costs max(0, -w(v)); every positive
/// node v other than the root has a copy v' with arcs v->v' (cost 0) and
/// root->v' (cost w(v)). Terminals are the copies and the included nodes.
/// Cut rows come from max-flow separation and are pooled; a pooled cut stays
/// valid in every subproblem of the search.
class CutLp {
 public:
  struct Result {
    bool feasible = true;
    bool converged = false;          // no violated cut left
    double upper = 0.0;              // bound on the subproblem's weight
    std::vector<double> node_value;  // LP in-flow of every graph node, 1 at the root
    std::vector<double> dist_in;     // reduced-cost distance from the root, per graph node
    std::vector<double> dist_out;    // reduced-cost distance to the nearest terminal
    std::vector<double> copy_rc;     // reduced cost of the root arc of v's copy (0 without one)
    std::vector<int> binding;        // pool ids of the cuts with a positive dual
    std::size_t pivots = 0;
  };

  /// Nodes excluded in `state` are left out of the network for good.
  CutLp(const CompactGraph& g, int root, std::span<const signed char> state);

  /// Relaxation of `state`, which must restrict the constructor's state.
  /// Starts from the pooled cuts `warm` and returns early once the bound is
  /// at most `stop_at`.
  Result solve(std::span<const signed char> state, std::span<const int> warm, double stop_at);

  std::size_t pool_size() const { return pool_.size(); }
  int arc_count() const { return static_cast<int>(tail_.size()); }

 private:
  int add_arc(int t, int h, double c);
  int intern(std::vector<int> cut);

  int n_ = 0;      // graph nodes
  int nodes_ = 0;  // graph nodes and copies
  int root_ = 0;
  double base_ = 0.0;  // w(root) plus the positive weight behind the copies
  std::vector<int> tail_, head_;
  std::vector<double> cost_;
  std::vector<int> in_start_, in_arcs_, out_start_, out_arcs_;
  std::vector<int> graph_node_;  // -1 for copies
  std::vector<int> copy_, root_arc_;
  std::vector<int> copies_;
  std::vector<std::vector<int>> pool_;  // sorted network node sets
  std::map<std::vector<int>, int> pool_index_;
};

}  // namespace mwcs
