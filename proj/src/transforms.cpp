#include <algorithm>

#include "detail/union_find.hpp"
#include "mwcs/errors.hpp"
#include "mwcs/transforms.hpp"

namespace mwcs {

SplitMwcs pcst_to_mwcs(const PcstInstance& inst) {
  const int n = inst.size();
  SplitMwcs out;
  out.original_nodes = n;
  std::vector<double> weights = inst.profit;
  std::vector<std::pair<int, int>> edges;
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const int s = n + static_cast<int>(e);
    weights.push_back(-inst.cost[e]);
    edges.emplace_back(inst.edges[e].first, s);
    edges.emplace_back(inst.edges[e].second, s);
    out.split.push_back(inst.edges[e]);
  }
  out.graph = CompactGraph::from_edges(std::move(weights), edges);
  return out;
}

PcstTree mwcs_solution_to_pcst(const std::vector<int>& solution, const SplitMwcs& split,
                               const PcstInstance& inst) {
  std::vector<int> sol = solution;
  std::sort(sol.begin(), sol.end());
  auto chosen = [&](int v) { return std::binary_search(sol.begin(), sol.end(), v); };

  PcstTree tree;
  std::vector<int> candidate_edges;
  for (int v : sol) {
    if (!split.is_split(v)) {
      tree.nodes.push_back(v);
      continue;
    }
    const auto [a, b] = split.split[split.edge_of(v)];
    if (!chosen(a) || !chosen(b))
      throw PreconditionError("split node selected without both edge endpoints");
    candidate_edges.push_back(split.edge_of(v));
  }
  detail::UnionFind uf(inst.size());
  for (int e : candidate_edges)
    if (uf.unite(inst.edges[e].first, inst.edges[e].second)) tree.edges.push_back(e);

  for (int v : tree.nodes) tree.profit += inst.profit[v];
  for (int e : tree.edges) tree.profit -= inst.cost[e];
  return tree;
}

MwcsAsPcst mwcs_to_pcst(const CompactGraph& g) {
  MwcsAsPcst out;
  double lowest = 0.0;
  for (double w : g.weight) lowest = std::min(lowest, w);
  out.offset = lowest;
  for (double w : g.weight) out.instance.profit.push_back(w - lowest);
  out.instance.edges = g.edges();
  out.instance.cost.assign(out.instance.edges.size(), -lowest);
  return out;
}

}  // namespace mwcs
