#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "detail/union_find.hpp"
#include "mwcs/errors.hpp"
#include "mwcs/heuristic.hpp"

namespace mwcs {

std::vector<std::pair<int, int>> heuristic_spanning_forest(const CompactGraph& g,
                                                           std::span<const double> xbar) {
  auto edges = g.edges();
  auto x = [&](int v) { return xbar.empty() ? 1.0 : xbar[v]; };
  std::vector<double> cost(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    cost[e] = 2.0 - (x(edges[e].first) + x(edges[e].second));
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });

  detail::UnionFind uf(g.size());
  std::vector<std::pair<int, int>> forest;
  forest.reserve(g.size());
  for (std::size_t e : order)
    if (uf.unite(edges[e].first, edges[e].second)) forest.push_back(edges[e]);
  return forest;
}

SubgraphSolution primal_heuristic(const CompactGraph& g, std::span<const double> xbar,
                                  std::span<const int> roots) {
  SubgraphSolution best;
  if (g.size() == 0) {
    if (!roots.empty()) throw InfeasibleError("roots given for an empty graph");
    return best;
  }
  auto forest_edges = heuristic_spanning_forest(g, xbar);
  CompactGraph forest = CompactGraph::from_edges(g.weight, forest_edges);

  bool found = false;
  for (const auto& comp : connected_components(forest)) {
    if (!roots.empty() && !std::binary_search(comp.begin(), comp.end(), roots.front())) continue;
    std::vector<char> keep(g.size(), 0);
    for (int v : comp) keep[v] = 1;
    auto [tree, old_of] = induce(forest, keep);
    TreeDpResult dp;
    if (roots.empty()) {
      dp = tree_dp_unrooted(tree);
    } else {
      std::vector<int> local_required;
      for (int r : roots) {
        auto it = std::lower_bound(comp.begin(), comp.end(), r);
        if (it == comp.end() || *it != r)
          throw InfeasibleError("roots lie in different connected components");
        local_required.push_back(static_cast<int>(it - comp.begin()));
      }
      dp = tree_dp(tree, local_required.front(), local_required);
    }
    if (!found || dp.objective > best.objective) {
      found = true;
      best.objective = dp.objective;
      best.nodes.clear();
      for (int v : dp.witness) best.nodes.push_back(old_of[v]);
      std::sort(best.nodes.begin(), best.nodes.end());
    }
  }
  return best;
}

SubgraphSolution path_heuristic(const CompactGraph& g, std::span<const int> roots,
                                std::span<const char> allowed) {
  const int n = g.size();
  if (roots.empty()) throw PreconditionError("path_heuristic needs a start node");
  auto ok = [&](int v) { return allowed.empty() || allowed[v]; };
  for (int r : roots)
    if (r < 0 || r >= n || !ok(r)) throw InfeasibleError("root outside the allowed nodes");

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<char> in_tree(n, 0), required(n, 0);
  for (int r : roots) required[r] = 1;
  std::vector<std::pair<int, int>> tree_edges;
  std::vector<int> members{roots.front()};
  in_tree[roots.front()] = 1;
  int missing = static_cast<int>(roots.size()) - 1;
  for (int r : roots.subspan(1))
    if (r == roots.front()) --missing;

  std::vector<double> dist(n);
  std::vector<int> pred(n);
  using Item = std::pair<double, int>;
  while (true) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(pred.begin(), pred.end(), -1);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int v : members) {
      dist[v] = 0.0;
      pq.push({0.0, v});
    }
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (int u : g.adj[v]) {
        if (in_tree[u] || !ok(u)) continue;
        const double nd = d + std::max(0.0, -g.weight[u]);
        if (nd < dist[u]) {
          dist[u] = nd;
          pred[u] = v;
          pq.push({nd, u});
        }
      }
    }

    int pick = -1;
    double best = -inf;
    for (int v = 0; v < n; ++v) {
      if (in_tree[v] || dist[v] == inf) continue;
      if (missing > 0) {
        if (required[v] && (pick < 0 || -dist[v] > best)) {
          pick = v;
          best = -dist[v];
        }
        continue;
      }
      if (!(g.weight[v] > 0)) continue;
      double gain = 0.0;
      for (int x = v; !in_tree[x]; x = pred[x]) gain += g.weight[x];
      if (pick < 0 || gain > best + 1e-12) {
        best = gain;
        pick = v;
      }
    }
    if (pick < 0) {
      if (missing > 0) throw InfeasibleError("roots lie in different connected components");
      break;
    }
    for (int x = pick; !in_tree[x]; x = pred[x]) {
      in_tree[x] = 1;
      if (required[x]) --missing;
      members.push_back(x);
      tree_edges.emplace_back(x, pred[x]);
    }
  }

  std::vector<int> local(n, -1);
  std::sort(members.begin(), members.end());
  for (int i = 0; i < static_cast<int>(members.size()); ++i) local[members[i]] = i;
  std::vector<double> w;
  for (int v : members) w.push_back(g.weight[v]);
  for (auto& [a, b] : tree_edges) {
    a = local[a];
    b = local[b];
  }
  CompactGraph tree = CompactGraph::from_edges(std::move(w), tree_edges);
  std::vector<int> req;
  for (int r : roots) req.push_back(local[r]);
  TreeDpResult dp = tree_dp(tree, req.front(), req);
  SubgraphSolution out;
  out.objective = dp.objective;
  for (int v : dp.witness) out.nodes.push_back(members[v]);
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

}  // namespace mwcs
