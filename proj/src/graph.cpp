#include "mwcs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mwcs/errors.hpp"

namespace mwcs {

namespace {

void sorted_insert(std::vector<NodeId>& v, NodeId x, bool& inserted) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  inserted = it == v.end() || *it != x;
  if (inserted) v.insert(it, x);
}

bool sorted_erase(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return false;
  v.erase(it);
  return true;
}

std::vector<NodeId> sorted_unique(std::span<const NodeId> nodes) {
  std::vector<NodeId> s(nodes.begin(), nodes.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void require_live(const WeightedGraph& g, std::span<const NodeId> nodes, const char* op) {
  for (NodeId v : nodes)
    if (!g.contains(v))
      throw PreconditionError(std::string(op) + ": unknown node id " + std::to_string(v));
}

void require_connected_nonempty(const WeightedGraph& g, std::span<const NodeId> nodes,
                                const char* op) {
  if (nodes.empty()) throw PreconditionError(std::string(op) + ": empty node set");
  require_live(g, nodes, op);
  if (!is_connected_subset(g, nodes))
    throw PreconditionError(std::string(op) + ": node set does not induce a connected subgraph");
}

}  // namespace

NodeId WeightedGraph::add_node(double weight) {
  weight_.push_back(weight);
  adj_.emplace_back();
  alive_.push_back(1);
  ++live_;
  return static_cast<NodeId>(alive_.size() - 1);
}

void WeightedGraph::add_edge(NodeId a, NodeId b) {
  if (a == b) throw PreconditionError("self-loop on node " + std::to_string(a));
  if (!contains(a) || !contains(b))
    throw PreconditionError("edge endpoint is not a live node");
  bool inserted = false;
  sorted_insert(adj_[a], b, inserted);
  if (!inserted) return;
  sorted_insert(adj_[b], a, inserted);
  ++edges_;
}

void WeightedGraph::remove_edge(NodeId a, NodeId b) {
  if (sorted_erase(adj_[a], b)) {
    sorted_erase(adj_[b], a);
    --edges_;
  }
}

void WeightedGraph::remove_node(NodeId v) {
  if (!contains(v)) throw PreconditionError("remove of unknown node " + std::to_string(v));
  for (NodeId u : adj_[v]) sorted_erase(adj_[u], v);
  edges_ -= adj_[v].size();
  adj_[v].clear();
  adj_[v].shrink_to_fit();
  alive_[v] = 0;
  --live_;
}

bool WeightedGraph::has_edge(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return false;
  const auto& n = adj_[a];
  return std::binary_search(n.begin(), n.end(), b);
}

std::vector<NodeId> WeightedGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_);
  for (NodeId v = 0; v < alive_.size(); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

std::vector<std::pair<NodeId, NodeId>> WeightedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edges_);
  for (NodeId v = 0; v < alive_.size(); ++v)
    if (alive_[v])
      for (NodeId u : adj_[v])
        if (v < u) out.emplace_back(v, u);
  return out;
}

std::optional<std::string> validate(const WeightedGraph& g) {
  std::size_t half_edges = 0;
  for (NodeId v : g.nodes()) {
    const auto& n = g.neighbors(v);
    for (std::size_t i = 0; i < n.size(); ++i) {
      NodeId u = n[i];
      if (u == v) return "self-loop at " + std::to_string(v);
      if (i > 0 && n[i - 1] >= u) return "unsorted or duplicate adjacency at " + std::to_string(v);
      if (!g.contains(u)) return "dangling neighbor " + std::to_string(u) + " of " + std::to_string(v);
      if (!g.has_edge(u, v)) return "asymmetric edge " + std::to_string(v) + "-" + std::to_string(u);
    }
    half_edges += n.size();
  }
  if (half_edges != 2 * g.edge_count()) return "edge counter out of sync";
  return std::nullopt;
}

bool is_connected_subset(const WeightedGraph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) return true;
  std::vector<NodeId> set = sorted_unique(nodes);
  for (NodeId v : set)
    if (!g.contains(v)) return false;
  auto in_set = [&](NodeId v) { return std::binary_search(set.begin(), set.end(), v); };
  std::vector<char> seen(set.size(), 0);
  std::vector<NodeId> stack{set.front()};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : g.neighbors(v)) {
      if (!in_set(u)) continue;
      auto idx = std::lower_bound(set.begin(), set.end(), u) - set.begin();
      if (seen[idx]) continue;
      seen[idx] = 1;
      ++reached;
      stack.push_back(u);
    }
  }
  return reached == set.size();
}

double induced_weight(const WeightedGraph& g, std::span<const NodeId> nodes) {
  double sum = 0.0;
  for (NodeId v : sorted_unique(nodes)) sum += g.weight(v);
  return sum;
}

std::vector<std::vector<NodeId>> connected_components(const WeightedGraph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> seen(g.id_bound(), 0);
  for (NodeId s : g.nodes()) {
    if (seen[s]) continue;
    std::vector<NodeId> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (NodeId u : g.neighbors(comp[i]))
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<NodeId> boundary(const WeightedGraph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> set = sorted_unique(nodes);
  std::vector<NodeId> out;
  for (NodeId v : set)
    for (NodeId u : g.neighbors(v))
      if (!std::binary_search(set.begin(), set.end(), u)) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReductionTrace::ReductionTrace(const WeightedGraph& original) {
  origin_.resize(original.id_bound());
  original_weight_.resize(original.id_bound(), 0.0);
  for (NodeId v : original.nodes()) {
    origin_[v] = {v};
    original_weight_[v] = original.weight(v);
  }
}

void ReductionTrace::record(OpKind kind, std::vector<NodeId> inputs, std::vector<NodeId> outputs) {
  log_.push_back(TraceOp{kind, std::move(inputs), std::move(outputs)});
}

void ReductionTrace::set_origin(NodeId v, std::vector<NodeId> origin) {
  if (origin_.size() <= v) origin_.resize(v + 1);
  origin_[v] = std::move(origin);
}

namespace {

std::vector<NodeId> union_of_origins(const ReductionTrace& t, std::span<const NodeId> nodes) {
  std::vector<NodeId> out;
  for (NodeId v : nodes) {
    const auto& o = t.origin(v);
    out.insert(out.end(), o.begin(), o.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

NodeId merge(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> nodes) {
  require_connected_nonempty(g, nodes, "merge");
  std::vector<NodeId> set = sorted_unique(nodes);
  double w = 0.0;
  for (NodeId v : set) w += g.weight(v);
  std::vector<NodeId> outside = boundary(g, set);
  std::vector<NodeId> origin = union_of_origins(t, set);
  for (NodeId v : set) g.remove_node(v);
  NodeId s = g.add_node(w);
  for (NodeId u : outside) g.add_edge(s, u);
  t.set_origin(s, std::move(origin));
  t.record(OpKind::Merge, std::move(set), {s});
  return s;
}

NodeId isolate(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> nodes) {
  require_connected_nonempty(g, nodes, "isolate");
  std::vector<NodeId> set = sorted_unique(nodes);
  double w = 0.0;
  for (NodeId v : set) w += g.weight(v);
  NodeId s = g.add_node(w);
  t.set_origin(s, union_of_origins(t, set));
  t.record(OpKind::Isolate, std::move(set), {s});
  return s;
}

void remove_nodes(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> nodes) {
  if (nodes.empty()) return;
  require_live(g, nodes, "remove");
  std::vector<NodeId> set = sorted_unique(nodes);
  for (NodeId v : set) g.remove_node(v);
  t.record(OpKind::Remove, std::move(set), {});
}

void add_traced_edge(WeightedGraph& g, ReductionTrace& t, NodeId a, NodeId b) {
  if (g.has_edge(a, b)) return;
  g.add_edge(a, b);
  t.record(OpKind::AddEdge, {a, b}, {});
}

std::vector<NodeId> expand_solution(const ReductionTrace& t, std::span<const NodeId> reduced) {
  return union_of_origins(t, reduced);
}

std::optional<std::string> validate_trace(const WeightedGraph& g, const ReductionTrace& t) {
  for (NodeId v : g.nodes()) {
    const auto& o = t.origin(v);
    if (o.empty()) return "node " + std::to_string(v) + " has empty origin";
    double sum = 0.0;
    for (NodeId x : o) sum += t.original_weight(x);
    double tol = 1e-9 * std::max(1.0, std::abs(sum));
    if (std::abs(sum - g.weight(v)) > tol)
      return "weight of node " + std::to_string(v) + " differs from its origin sum";
  }
  for (const auto& comp : connected_components(g)) {
    std::unordered_map<NodeId, NodeId> owner;
    for (NodeId v : comp)
      for (NodeId x : t.origin(v))
        if (!owner.emplace(x, v).second)
          return "origin " + std::to_string(x) + " shared by nodes " + std::to_string(owner[x]) +
                 " and " + std::to_string(v);
  }
  return std::nullopt;
}

}  // namespace mwcs
