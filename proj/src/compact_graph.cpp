#include "mwcs/compact_graph.hpp"

#include <algorithm>

#include "mwcs/errors.hpp"

namespace mwcs {

std::size_t CompactGraph::edge_count() const {
  std::size_t half = 0;
  for (const auto& a : adj) half += a.size();
  return half / 2;
}

std::vector<std::pair<int, int>> CompactGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < size(); ++v)
    for (int u : adj[v])
      if (v < u) out.emplace_back(v, u);
  return out;
}

bool CompactGraph::has_edge(int a, int b) const {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

CompactGraph CompactGraph::from_edges(std::vector<double> weights,
                                      std::span<const std::pair<int, int>> edges) {
  CompactGraph g;
  g.weight = std::move(weights);
  g.adj.assign(g.weight.size(), {});
  for (auto [a, b] : edges) {
    if (a == b) throw PreconditionError("self-loop in edge list");
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

int InducedGraph::local(NodeId v) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  if (it == ids.end() || *it != v) return -1;
  return static_cast<int>(it - ids.begin());
}

std::vector<NodeId> InducedGraph::to_ids(std::span<const int> locals) const {
  std::vector<NodeId> out;
  out.reserve(locals.size());
  for (int i : locals) out.push_back(ids[i]);
  std::sort(out.begin(), out.end());
  return out;
}

InducedGraph induce(const WeightedGraph& g, std::span<const NodeId> nodes) {
  InducedGraph out;
  out.ids.assign(nodes.begin(), nodes.end());
  std::sort(out.ids.begin(), out.ids.end());
  out.ids.erase(std::unique(out.ids.begin(), out.ids.end()), out.ids.end());
  const int n = static_cast<int>(out.ids.size());
  out.graph.weight.resize(n);
  out.graph.adj.assign(n, {});
  for (int i = 0; i < n; ++i) {
    NodeId v = out.ids[i];
    out.graph.weight[i] = g.weight(v);
    for (NodeId u : g.neighbors(v)) {
      int j = out.local(u);
      if (j >= 0) out.graph.adj[i].push_back(j);
    }
  }
  return out;
}

InducedGraph induce_all(const WeightedGraph& g) {
  auto nodes = g.nodes();
  return induce(g, nodes);
}

std::pair<CompactGraph, std::vector<int>> induce(const CompactGraph& g, const std::vector<char>& keep) {
  std::vector<int> new_of(g.size(), -1);
  std::vector<int> old_of;
  for (int v = 0; v < g.size(); ++v)
    if (keep[v]) {
      new_of[v] = static_cast<int>(old_of.size());
      old_of.push_back(v);
    }
  CompactGraph h;
  h.weight.resize(old_of.size());
  h.adj.assign(old_of.size(), {});
  for (std::size_t i = 0; i < old_of.size(); ++i) {
    h.weight[i] = g.weight[old_of[i]];
    for (int u : g.adj[old_of[i]])
      if (new_of[u] >= 0) h.adj[i].push_back(new_of[u]);
  }
  return {std::move(h), std::move(old_of)};
}

bool is_connected_subset(const CompactGraph& g, std::span<const int> nodes) {
  if (nodes.empty()) return true;
  std::vector<char> in(g.size(), 0), seen(g.size(), 0);
  std::size_t distinct = 0;
  for (int v : nodes)
    if (!in[v]) {
      in[v] = 1;
      ++distinct;
    }
  std::vector<int> stack{nodes.front()};
  seen[nodes.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.adj[v])
      if (in[u] && !seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == distinct;
}

double induced_weight(const CompactGraph& g, std::span<const int> nodes) {
  double s = 0.0;
  for (int v : nodes) s += g.weight[v];
  return s;
}

std::vector<std::vector<int>> connected_components(const CompactGraph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.size(), 0);
  for (int s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int u : g.adj[comp[i]])
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace mwcs
