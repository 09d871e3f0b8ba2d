#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mwcs/errors.hpp"
#include "mwcs/graph.hpp"
#include "mwcs/preprocess.hpp"
#include "mwcs/solver.hpp"

namespace mwcs {

/// Blocks and cut vertices of a local CompactGraph. Isolated nodes form
/// singleton blocks.
struct Biconnected {
  std::vector<std::vector<int>> blocks;  // sorted node lists
  std::vector<char> is_cut;
};
Biconnected biconnected_components(const CompactGraph& g);

struct BlockCutTree {
  std::vector<std::vector<NodeId>> blocks;      // sorted
  std::vector<NodeId> cut_vertices;             // sorted
  std::vector<std::vector<NodeId>> block_cuts;  // cut vertices inside each block

  std::size_t degree(std::size_t block) const { return block_cuts[block].size(); }
};

/// Throws PreconditionError when `component` is not connected.
BlockCutTree block_cut_tree(const WeightedGraph& g, std::span<const NodeId> component);

struct TriComponent {
  std::vector<NodeId> nodes;  // sorted, includes the cut pair
  std::optional<std::pair<NodeId, NodeId>> cut_pair;
};

/// Separation-pair decomposition of a block. The first component is the whole
/// block without a cut pair; every other one is a side K + {u,v} where K is a
/// connected component of B - {u,v}. Throws PreconditionError unless the
/// block is biconnected with at least three nodes.
struct SpqrDecomposition {
  std::vector<TriComponent> components;
};
SpqrDecomposition spqr_decomposition(const WeightedGraph& g, std::span<const NodeId> block);

/// Raised when a sub-solve stops at its budget before proving optimality.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Shared state of one divide-and-conquer run.
struct DecomposeContext {
  SolverConfig solver;  // budget.time_limit is the budget of the whole run
  PreprocessConfig preprocess;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  // counters
  std::size_t blocks = 0;
  std::size_t positive_tricomponents = 0;
  std::size_t negative_tricomponents = 0;
  std::size_t bnb_nodes = 0;  // summed over the sub-solves
  std::size_t gadget_disjoint = 0;  // V1 and V2 disjoint: closure merges into u / v
  std::size_t gadget_shared = 0;    // V1 and V2 overlap: node v3
  std::size_t gadget_bridge = 0;    // V3 beyond V1 and V2: node v4
  std::size_t gadget_closure = 0;   // closing edges (v1,v) / (v2,u)
  std::size_t gadget_rejected = 0;
  std::set<std::vector<NodeId>> rejected;

  /// Exact sub-solve on G[nodes]; rooted when `roots` is nonempty. Returns the
  /// chosen ids and their weight. Throws BudgetExhausted.
  std::pair<std::vector<NodeId>, double> solve(const WeightedGraph& g, std::span<const NodeId> nodes,
                                               std::span<const NodeId> roots);
  SubgraphSolution solve(const CompactGraph& g, std::span<const int> roots);
  double remaining() const;
};

/// Replaces an all-nonpositive side A with cut pair {u,v} by the cheapest
/// u-v path through it (interior merged into one node).
void replace_negative_tricomponent(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> A,
                                   NodeId u, NodeId v);

/// Builds the triconnected-component gadget for side A with cut pair {u,v}.
/// The gadget is first assembled on a scratch copy and applied only when it
/// preserves the boundary optima of A and shrinks the graph. Returns whether
/// it was applied.
bool process_tricomponent(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> A, NodeId u,
                          NodeId v, DecomposeContext& ctx);

/// Leaf-block step: removal of a nonpositive leaf block, then the block gadget
/// (merged rooted optimum at c, plus an isolated unrooted optimum when the two
/// differ). Separation-pair sides are reduced first.
void process_bicomponent(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> B,
                         std::optional<NodeId> c, DecomposeContext& ctx);

struct ComponentReport {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t blocks = 0;
  std::size_t positive_tricomponents = 0;
  std::size_t negative_tricomponents = 0;
};

struct DecomposeResult {
  std::vector<NodeId> nodes;  // ids of the graph the trace started from
  double objective = 0.0;
  std::vector<ComponentReport> components;
};

/// Divide and conquer: preprocessing, then leaf blocks per component until
/// every node is isolated; the heaviest remaining node is expanded through
/// the trace. Assumes some node has positive weight.
DecomposeResult solve_mwcs(WeightedGraph& g, ReductionTrace& t, DecomposeContext& ctx);

}  // namespace mwcs
