#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mwcs/graph.hpp"

namespace mwcs {

struct RuleReport {
  std::string rule;
  std::size_t applications = 0;
  std::size_t nodes_removed = 0;
  std::size_t nodes_merged = 0;
  double elapsed = 0.0;  // seconds

  RuleReport& operator+=(const RuleReport& other);
  bool changed() const { return applications > 0; }
};

// Rules that delete or merge negative nodes do nothing when no node has
// weight >= 0, since the optimum is then a single negative node.

/// Phase I: isolated nodes of strictly negative weight are removed.
RuleReport rule_isolated_negative(WeightedGraph& g, ReductionTrace& t);
/// Phase I: each maximal connected set of positive nodes becomes one node.
RuleReport rule_merge_adjacent_positive(WeightedGraph& g, ReductionTrace& t);
/// Phase I: maximal paths of at least two negative degree-2 nodes are merged.
/// A cycle made only of such nodes keeps its smallest id out of the merge.
RuleReport rule_negative_chain(WeightedGraph& g, ReductionTrace& t);
/// Phase II: among negative nodes with identical neighbor lists only the one
/// of largest weight survives (larger id on ties).
RuleReport rule_mirrored_hubs(WeightedGraph& g, ReductionTrace& t);
/// Phase III: a negative degree-2 node v with neighbors u, w is removed when
/// some u-w path avoiding v is strictly cheaper than -w(v), where entering b
/// costs max(-w(b), 0).
RuleReport rule_least_cost(WeightedGraph& g, ReductionTrace& t);

struct PreprocessConfig {
  bool phase1 = true;
  bool phase2 = true;
  bool phase3 = true;
};

/// Runs the phases to a global fixpoint; a change in phase II or III restarts
/// from phase I. Returns one accumulated report per rule, in rule order.
std::vector<RuleReport> preprocess(WeightedGraph& g, ReductionTrace& t,
                                   const PreprocessConfig& cfg = {});

}  // namespace mwcs
