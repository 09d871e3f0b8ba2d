#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwcs {

using NodeId = std::uint32_t;

/// Undirected node-weighted simple graph with stable node identifiers.
///
/// Ids are handed out in increasing order and never reused, so a removed or
/// merged node id stays dead forever. Adjacency lists are kept sorted.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  NodeId add_node(double weight);
  /// Adds {a,b}; duplicates are ignored. Self-loops throw PreconditionError.
  void add_edge(NodeId a, NodeId b);
  void remove_edge(NodeId a, NodeId b);
  void remove_node(NodeId v);

  bool contains(NodeId v) const { return v < alive_.size() && alive_[v]; }
  bool has_edge(NodeId a, NodeId b) const;
  double weight(NodeId v) const { return weight_[v]; }
  void set_weight(NodeId v, double w) { weight_[v] = w; }
  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }

  std::size_t node_count() const { return live_; }
  std::size_t edge_count() const { return edges_; }
  /// One past the largest id ever allocated.
  NodeId id_bound() const { return static_cast<NodeId>(alive_.size()); }
  /// Live node ids in increasing order.
  std::vector<NodeId> nodes() const;
  /// Edges as (a,b) with a < b, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  std::vector<double> weight_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<char> alive_;
  std::size_t live_ = 0;
  std::size_t edges_ = 0;
};

/// Returns a description of the first structural defect, if any
/// (asymmetric adjacency, self-loop, dangling or duplicate neighbor).
std::optional<std::string> validate(const WeightedGraph& g);

/// True for the empty set and for sets whose induced subgraph is connected.
bool is_connected_subset(const WeightedGraph& g, std::span<const NodeId> nodes);
double induced_weight(const WeightedGraph& g, std::span<const NodeId> nodes);

/// Connected components of the live graph, each sorted, ordered by smallest id.
std::vector<std::vector<NodeId>> connected_components(const WeightedGraph& g);

/// The set of nodes outside `nodes` adjacent to some node in `nodes`.
std::vector<NodeId> boundary(const WeightedGraph& g, std::span<const NodeId> nodes);

enum class OpKind { Merge, Isolate, Remove, AddEdge };

struct TraceOp {
  OpKind kind;
  std::vector<NodeId> inputs;
  std::vector<NodeId> outputs;
};

/// Provenance of every live node in terms of the nodes of the graph the
/// trace was created from.
///
/// Origins of distinct live nodes in the same connected component are
/// disjoint. An isolated copy produced by `isolate` shares origins with the
/// nodes it copies; it has no neighbors, so no connected set contains both.
class ReductionTrace {
 public:
  ReductionTrace() = default;
  explicit ReductionTrace(const WeightedGraph& original);

  const std::vector<NodeId>& origin(NodeId v) const { return origin_[v]; }
  double original_weight(NodeId original) const { return original_weight_[original]; }
  std::size_t original_size() const { return original_weight_.size(); }
  std::span<const TraceOp> log() const { return log_; }

  void record(OpKind kind, std::vector<NodeId> inputs, std::vector<NodeId> outputs);
  void set_origin(NodeId v, std::vector<NodeId> origin);

 private:
  std::vector<std::vector<NodeId>> origin_;
  std::vector<double> original_weight_;
  std::vector<TraceOp> log_;
};

/// Contracts a connected node set into one fresh supernode carrying the
/// summed weight and all outside neighbors. Returns the supernode id.
NodeId merge(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> nodes);

/// Adds a fresh edgeless node whose weight and origin are those of the
/// connected set `nodes`; the set itself is left untouched.
NodeId isolate(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> nodes);

/// Deletes the given nodes with their incident edges.
void remove_nodes(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> nodes);

/// Adds an edge and logs it (gadget wiring).
void add_traced_edge(WeightedGraph& g, ReductionTrace& t, NodeId a, NodeId b);

/// Union of origins of the given reduced nodes, sorted.
std::vector<NodeId> expand_solution(const ReductionTrace& t, std::span<const NodeId> reduced);

/// Checks trace invariants against the live graph: weight equals summed
/// original weight of the origin, origins disjoint within each component.
std::optional<std::string> validate_trace(const WeightedGraph& g, const ReductionTrace& t);

}  // namespace mwcs
