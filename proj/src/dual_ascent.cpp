#include <algorithm>
#include <limits>
#include <queue>

#include "mwcs/solver.hpp"

namespace mwcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZero = 1e-12;

struct ArcNet {
  int nodes = 0;
  std::vector<int> tail, head;
  std::vector<double> cost;
  std::vector<int> in_start, in_arcs;    // CSR by head
  std::vector<int> out_start, out_arcs;  // CSR by tail

  int add(int t, int h, double c) {
    tail.push_back(t);
    head.push_back(h);
    cost.push_back(c);
    return static_cast<int>(tail.size()) - 1;
  }

  void index() {
    const int m = static_cast<int>(tail.size());
    in_start.assign(nodes + 1, 0);
    out_start.assign(nodes + 1, 0);
    for (int a = 0; a < m; ++a) {
      ++in_start[head[a] + 1];
      ++out_start[tail[a] + 1];
    }
    for (int v = 0; v < nodes; ++v) {
      in_start[v + 1] += in_start[v];
      out_start[v + 1] += out_start[v];
    }
    in_arcs.resize(m);
    out_arcs.resize(m);
    auto in_pos = in_start;
    auto out_pos = out_start;
    for (int a = 0; a < m; ++a) {
      in_arcs[in_pos[head[a]]++] = a;
      out_arcs[out_pos[tail[a]]++] = a;
    }
  }
};

std::vector<double> dijkstra(const ArcNet& net, const std::vector<double>& rc,
                             std::span<const int> sources, bool reverse) {
  std::vector<double> dist(net.nodes, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (int s : sources) {
    dist[s] = 0.0;
    pq.push({0.0, s});
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    const auto& start = reverse ? net.in_start : net.out_start;
    const auto& arcs = reverse ? net.in_arcs : net.out_arcs;
    for (int i = start[v]; i < start[v + 1]; ++i) {
      const int a = arcs[i];
      const int u = reverse ? net.tail[a] : net.head[a];
      const double nd = d + rc[a];
      if (nd < dist[u]) {
        dist[u] = nd;
        pq.push({nd, u});
      }
    }
  }
  return dist;
}

}  // namespace

DualAscentResult dual_ascent(const CompactGraph& g, int root, std::span<const signed char> state,
                             bool distances) {
  const int n = g.size();
  DualAscentResult res;

  auto entry_cost = [&](int v) {
    return (state[v] == kIncluded || g.weight[v] >= 0) ? 0.0 : -g.weight[v];
  };

  ArcNet net;
  net.nodes = n;
  double positive = 0.0;
  double forced_negative = 0.0;
  std::vector<int> terminals;
  for (int v = 0; v < n; ++v) {
    if (state[v] == kExcluded) continue;
    if (g.weight[v] > 0) positive += g.weight[v];
    if (state[v] == kIncluded) {
      if (g.weight[v] < 0) forced_negative -= g.weight[v];
      if (v != root) terminals.push_back(v);
    }
    for (int u : g.adj[v])
      if (u != root && state[u] != kExcluded) net.add(v, u, entry_cost(u));
  }
  std::vector<int> root_arc(n, -1);
  for (int v = 0; v < n; ++v) {
    if (state[v] != kUndecided || !(g.weight[v] > 0)) continue;
    const int copy = net.nodes++;
    net.add(v, copy, 0.0);
    root_arc[v] = net.add(root, copy, g.weight[v]);
    terminals.push_back(copy);
  }
  net.index();

  std::vector<double> rc = net.cost;
  std::vector<int> mark(net.nodes, -1);
  int stamp = 0;
  std::vector<int> members;
  // smallest cut first (size of the last grown set, ties by terminal order)
  using Active = std::pair<std::size_t, int>;
  std::priority_queue<Active, std::vector<Active>, std::greater<>> active;
  for (int t : terminals) active.push({1, t});
  double lower = 0.0;

  while (!active.empty()) {
    const int t = active.top().second;
    active.pop();
    ++stamp;
    members.clear();
    members.push_back(t);
    mark[t] = stamp;
    bool reached = false;
    for (std::size_t i = 0; i < members.size() && !reached; ++i) {
      const int v = members[i];
      for (int k = net.in_start[v]; k < net.in_start[v + 1]; ++k) {
        const int a = net.in_arcs[k];
        if (rc[a] > kZero) continue;
        const int u = net.tail[a];
        if (u == root) {
          reached = true;
          break;
        }
        if (mark[u] != stamp) {
          mark[u] = stamp;
          members.push_back(u);
        }
      }
    }
    if (reached) continue;

    double delta = kInf;
    for (int v : members)
      for (int k = net.in_start[v]; k < net.in_start[v + 1]; ++k) {
        const int a = net.in_arcs[k];
        if (mark[net.tail[a]] != stamp) delta = std::min(delta, rc[a]);
      }
    if (delta == kInf) {
      res.feasible = false;
      return res;
    }
    lower += delta;
    for (int v : members)
      for (int k = net.in_start[v]; k < net.in_start[v + 1]; ++k) {
        const int a = net.in_arcs[k];
        if (mark[net.tail[a]] != stamp) rc[a] -= delta;
      }
    active.push({members.size(), t});
  }

  res.lower = lower;
  res.upper = positive - forced_negative - lower;
  res.copy_rc.assign(n, 0.0);
  for (int v = 0; v < n; ++v)
    if (root_arc[v] >= 0) res.copy_rc[v] = rc[root_arc[v]];

  res.zero_reach.assign(n, 0);
  {
    std::vector<int> stack{root};
    std::vector<char> seen(net.nodes, 0);
    seen[root] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (v < n) res.zero_reach[v] = 1;
      for (int k = net.out_start[v]; k < net.out_start[v + 1]; ++k) {
        const int a = net.out_arcs[k];
        if (rc[a] <= kZero && !seen[net.head[a]]) {
          seen[net.head[a]] = 1;
          stack.push_back(net.head[a]);
        }
      }
    }
  }

  if (distances) {
    const int src[] = {root};
    res.dist_in = dijkstra(net, rc, src, false);
    res.dist_out = dijkstra(net, rc, terminals, true);
    res.dist_in.resize(n);
    res.dist_out.resize(n);
  }
  return res;
}

}  // namespace mwcs
