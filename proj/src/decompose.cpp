#include "mwcs/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

#include "mwcs/compact_graph.hpp"

namespace mwcs {

namespace {

std::vector<NodeId> sorted_ids(std::span<const NodeId> nodes) {
  std::vector<NodeId> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has(const std::vector<NodeId>& sorted, NodeId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<NodeId> minus(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NodeId> intersect(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NodeId> unite(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct Side {
  std::vector<NodeId> nodes;  // K + {u, v}, sorted
  NodeId u;
  NodeId v;
  bool largest;  // largest side of its pair (first one on ties)
};

std::vector<Side> separation_sides(const WeightedGraph& g, std::span<const NodeId> block) {
  InducedGraph ig = induce(g, block);
  const int n = ig.graph.size();
  std::vector<Side> sides;
  for (int a = 0; a < n; ++a) {
    std::vector<char> keep(n, 1);
    keep[a] = 0;
    auto [sub, old_of] = induce(ig.graph, keep);
    Biconnected bc = biconnected_components(sub);
    std::vector<int> partners;
    for (int j = 0; j < sub.size(); ++j)
      if (bc.is_cut[j] && old_of[j] > a) partners.push_back(old_of[j]);
    std::sort(partners.begin(), partners.end());
    for (int b : partners) {
      std::vector<char> keep2(n, 1);
      keep2[a] = keep2[b] = 0;
      auto [rest, rest_old] = induce(ig.graph, keep2);
      auto comps = connected_components(rest);
      std::size_t big = 0;
      for (std::size_t k = 1; k < comps.size(); ++k)
        if (comps[k].size() > comps[big].size()) big = k;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        std::vector<int> local;
        for (int x : comps[k]) local.push_back(rest_old[x]);
        local.push_back(a);
        local.push_back(b);
        Side s{ig.to_ids(local), ig.ids[a], ig.ids[b], k == big};
        sides.push_back(std::move(s));
      }
    }
  }
  return sides;
}

}  // namespace

Biconnected biconnected_components(const CompactGraph& g) {
  const int n = g.size();
  Biconnected out;
  out.is_cut.assign(n, 0);
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> edge_stack;
  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  std::vector<Frame> frames;
  int timer = 0;

  for (int s = 0; s < n; ++s) {
    if (disc[s] != -1) continue;
    if (g.adj[s].empty()) {
      disc[s] = timer++;
      out.blocks.push_back({s});
      continue;
    }
    int root_children = 0;
    disc[s] = low[s] = timer++;
    frames.push_back({s, -1, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      const int v = f.v;
      if (f.next < g.adj[v].size()) {
        const int u = g.adj[v][f.next++];
        if (disc[u] == -1) {
          edge_stack.emplace_back(v, u);
          disc[u] = low[u] = timer++;
          frames.push_back({u, v, 0});
        } else if (u != f.parent && disc[u] < disc[v]) {
          edge_stack.emplace_back(v, u);
          low[v] = std::min(low[v], disc[u]);
        }
        continue;
      }
      frames.pop_back();
      if (frames.empty()) break;
      const int p = frames.back().v;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        if (p == s)
          ++root_children;
        else
          out.is_cut[p] = 1;
        std::vector<int> block;
        while (true) {
          auto [a, b] = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(a);
          block.push_back(b);
          if (a == p && b == v) break;
        }
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        out.blocks.push_back(std::move(block));
      }
    }
    if (root_children >= 2) out.is_cut[s] = 1;
  }
  return out;
}

BlockCutTree block_cut_tree(const WeightedGraph& g, std::span<const NodeId> component) {
  if (!is_connected_subset(g, component) || component.empty())
    throw PreconditionError("block_cut_tree needs a nonempty connected node set");
  InducedGraph ig = induce(g, component);
  Biconnected bc = biconnected_components(ig.graph);
  BlockCutTree t;
  for (int v = 0; v < ig.graph.size(); ++v)
    if (bc.is_cut[v]) t.cut_vertices.push_back(ig.ids[v]);
  for (const auto& b : bc.blocks) {
    t.blocks.push_back(ig.to_ids(b));
    std::vector<NodeId> cuts;
    for (int v : b)
      if (bc.is_cut[v]) cuts.push_back(ig.ids[v]);
    std::sort(cuts.begin(), cuts.end());
    t.block_cuts.push_back(std::move(cuts));
  }
  return t;
}

SpqrDecomposition spqr_decomposition(const WeightedGraph& g, std::span<const NodeId> block) {
  auto ids = sorted_ids(block);
  if (ids.size() < 3) throw PreconditionError("separation pairs need a block of at least three nodes");
  InducedGraph ig = induce(g, ids);
  Biconnected bc = biconnected_components(ig.graph);
  if (bc.blocks.size() != 1 || bc.blocks.front().size() != ids.size())
    throw PreconditionError("node set is not biconnected");
  SpqrDecomposition d;
  d.components.push_back({ids, std::nullopt});
  for (auto& s : separation_sides(g, ids)) d.components.push_back({std::move(s.nodes), std::pair{s.u, s.v}});
  return d;
}

double DecomposeContext::remaining() const {
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return solver.budget.time_limit - elapsed;
}

SubgraphSolution DecomposeContext::solve(const CompactGraph& g, std::span<const int> roots) {
  SolverConfig cfg = solver;
  cfg.observer = nullptr;
  cfg.budget.time_limit = remaining();
  if (!(cfg.budget.time_limit > 0)) throw BudgetExhausted("time limit reached during decomposition");
  SubgraphSolution s = bnb_drive(g, roots, cfg);
  bnb_nodes += s.bnb_nodes;
  if (!s.optimal) throw BudgetExhausted("sub-solve stopped before optimality");
  return s;
}

std::pair<std::vector<NodeId>, double> DecomposeContext::solve(const WeightedGraph& g,
                                                               std::span<const NodeId> nodes,
                                                               std::span<const NodeId> roots) {
  InducedGraph ig = induce(g, nodes);
  std::vector<int> local;
  for (NodeId r : roots) local.push_back(ig.local(r));
  SubgraphSolution s = solve(ig.graph, local);
  return {ig.to_ids(s.nodes), s.objective};
}

void replace_negative_tricomponent(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> A,
                                   NodeId u, NodeId v) {
  auto ids = sorted_ids(A);
  InducedGraph ig = induce(g, ids);
  const int n = ig.graph.size();
  const int lu = ig.local(u);
  const int lv = ig.local(v);
  auto cost = [&](int x) { return (x == lu || x == lv) ? 0.0 : -ig.graph.weight[x]; };

  // (cost, hops) from every node to v, never passing through u
  using Key = std::pair<double, int>;
  const Key inf{std::numeric_limits<double>::infinity(), 0};
  std::vector<Key> dist(n, inf);
  std::priority_queue<std::pair<Key, int>, std::vector<std::pair<Key, int>>, std::greater<>> pq;
  dist[lv] = {0.0, 0};
  pq.push({dist[lv], lv});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    for (int y : ig.graph.adj[x]) {
      if (y == lu) continue;
      Key nd{cost(x) + d.first, d.second + 1};
      if (nd < dist[y]) {
        dist[y] = nd;
        pq.push({nd, y});
      }
    }
  }
  // best first step out of u, then follow tight arcs choosing the smallest id
  Key best = inf;
  for (int y : ig.graph.adj[lu]) {
    Key k{cost(y) + dist[y].first, dist[y].second + 1};
    if (dist[y] != inf && k < best) best = k;
  }
  if (best == inf) throw PreconditionError("cut pair not connected inside the component");
  std::vector<int> path{lu};
  Key want = best;
  int cur = lu;
  while (cur != lv) {
    int next = -1;
    for (int y : ig.graph.adj[cur]) {
      if (y == lu || dist[y] == inf) continue;
      Key k{cost(y) + dist[y].first, dist[y].second + 1};
      if (k == want) {
        next = y;
        break;
      }
    }
    if (next < 0) throw PreconditionError("shortest path reconstruction failed");
    want = dist[next];
    path.push_back(next);
    cur = next;
  }

  std::vector<int> interior(path.begin() + 1, path.end() - 1);
  std::vector<NodeId> inner_ids = ig.to_ids(interior);
  std::vector<NodeId> doomed;
  for (NodeId x : ids)
    if (x != u && x != v && !has(inner_ids, x)) doomed.push_back(x);
  if (!inner_ids.empty()) merge(g, t, inner_ids);
  remove_nodes(g, t, doomed);
}

namespace {

struct GadgetNodes {
  NodeId u;
  NodeId v;
  std::vector<NodeId> nodes;  // u, v and the created nodes
  bool disjoint = false;
  bool shared = false;
  bool bridge = false;
  bool closure = false;
};

/// The triconnected gadget wiring; throws PreconditionError when one of the
/// sets to merge is not connected.
GadgetNodes build_gadget(WeightedGraph& g, ReductionTrace& t, const std::vector<NodeId>& A, NodeId u,
                         NodeId v, const std::vector<NodeId>& V1, const std::vector<NodeId>& V2,
                         const std::vector<NodeId>& V3, const std::vector<NodeId>& V4) {
  GadgetNodes out;
  isolate(g, t, V4);
  NodeId cu = u, cv = v;
  std::optional<NodeId> v1, v2, v3, v4;
  const auto only1 = minus(V1, V2);
  const auto only2 = minus(V2, V1);
  const auto both = intersect(V1, V2);
  const auto extra = minus(V3, unite(V1, V2));

  if (!only1.empty()) {
    v1 = merge(g, t, only1);
    add_traced_edge(g, t, cu, *v1);
  }
  if (!only2.empty()) {
    v2 = merge(g, t, only2);
    add_traced_edge(g, t, cv, *v2);
  }
  if (both.empty()) {
    if (!V1.empty()) {
      const NodeId pair[] = {cu, *v1};
      cu = merge(g, t, pair);
      v1 = cu;
    }
    if (!V2.empty()) {
      const NodeId pair[] = {cv, *v2};
      cv = merge(g, t, pair);
      v2 = cv;
    }
    out.disjoint = !V1.empty() || !V2.empty();
  } else {
    v3 = merge(g, t, both);
    add_traced_edge(g, t, subset(V1, V2) ? cu : *v1, *v3);
    add_traced_edge(g, t, subset(V2, V1) ? cv : *v2, *v3);
    out.shared = true;
  }
  if (!extra.empty()) {
    v4 = merge(g, t, extra);
    add_traced_edge(g, t, cu, *v4);
    add_traced_edge(g, t, cv, *v4);
    out.bridge = true;
  }
  if (both.empty() && extra.empty()) {
    if (!only1.empty()) {
      add_traced_edge(g, t, *v1, cv);
      out.closure = true;
    }
    if (!only2.empty()) {
      add_traced_edge(g, t, *v2, cu);
      out.closure = true;
    }
  }
  std::vector<NodeId> doomed;
  for (NodeId a : A)
    if (g.contains(a) && a != cu && a != cv) doomed.push_back(a);
  remove_nodes(g, t, doomed);

  out.u = cu;
  out.v = cv;
  out.nodes = {cu, cv};
  for (const auto& x : {v1, v2, v3, v4})
    if (x && *x != cu && *x != cv) out.nodes.push_back(*x);
  return out;
}

/// Best values of the gadget's four boundary cases: containing u only, v
/// only, both connected inside, both with every piece touching u or v.
struct BoundaryValues {
  double u = -std::numeric_limits<double>::infinity();
  double v = u;
  double joined = u;
  double split = u;
};

}  // namespace

bool process_tricomponent(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> A_in, NodeId u,
                          NodeId v, DecomposeContext& ctx) {
  const auto A = sorted_ids(A_in);
  if (ctx.rejected.count(A)) return false;
  auto reject = [&] {
    ++ctx.gadget_rejected;
    ctx.rejected.insert(A);
    return false;
  };

  const std::vector<NodeId> ru{u}, rv{v}, ruv{u, v};
  auto [S1, f_u] = ctx.solve(g, minus(A, rv), ru);
  auto [S2, f_v] = ctx.solve(g, minus(A, ru), rv);
  auto [S3, f_joined] = ctx.solve(g, A, ruv);
  auto [V4, f4] = ctx.solve(g, A, {});
  (void)f4;
  const auto V1 = minus(S1, ru);
  const auto V2 = minus(S2, rv);
  const auto V3 = minus(S3, ruv);

  // u and v joined through an outside dummy node
  double f_split;
  {
    InducedGraph ig = induce(g, A);
    CompactGraph h = ig.graph;
    const int z = h.size();
    h.weight.push_back(0.0);
    h.adj.push_back({ig.local(u), ig.local(v)});
    std::sort(h.adj.back().begin(), h.adj.back().end());
    h.adj[ig.local(u)].push_back(z);
    h.adj[ig.local(v)].push_back(z);
    const int roots[] = {ig.local(u), ig.local(v), z};
    f_split = ctx.solve(h, roots).objective;
  }

  WeightedGraph scratch = g;
  ReductionTrace local(scratch);
  GadgetNodes gad;
  try {
    gad = build_gadget(scratch, local, A, u, v, V1, V2, V3, V4);
  } catch (const PreconditionError&) {
    return reject();
  }
  if (!(scratch.node_count() < g.node_count())) return reject();

  const int k = static_cast<int>(gad.nodes.size());
  std::vector<unsigned> adj(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && scratch.has_edge(gad.nodes[i], gad.nodes[j])) adj[i] |= 1u << j;
  auto components_touch_uv = [&](unsigned m) {
    unsigned reach = m & 3u;
    unsigned frontier = reach;
    while (frontier) {
      unsigned next = 0;
      for (unsigned f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= m & ~reach;
      reach |= next;
      frontier = next;
    }
    return reach == m;
  };
  auto connected = [&](unsigned m) {
    unsigned reach = m & (~m + 1);
    unsigned frontier = reach;
    while (frontier) {
      unsigned next = 0;
      for (unsigned f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= m & ~reach;
      reach |= next;
      frontier = next;
    }
    return reach == m;
  };

  BoundaryValues gv;
  for (unsigned m = 1; m < (1u << k); ++m) {
    const bool cu = m & 1u, cv = m & 2u;
    double w = 0.0;
    std::vector<NodeId> members;
    for (int i = 0; i < k; ++i)
      if (m & (1u << i)) {
        w += scratch.weight(gad.nodes[i]);
        members.push_back(gad.nodes[i]);
      }
    if (connected(m)) {
      auto expanded = expand_solution(local, members);
      if (!is_connected_subset(g, expanded)) return reject();
      if (cu && !cv) gv.u = std::max(gv.u, w);
      if (cv && !cu) gv.v = std::max(gv.v, w);
      if (cu && cv) gv.joined = std::max(gv.joined, w);
    }
    if (cu && cv && components_touch_uv(m)) gv.split = std::max(gv.split, w);
  }
  auto covers = [](double gadget, double truth) {
    return gadget >= truth - 1e-9 * std::max(1.0, std::abs(truth));
  };
  if (!covers(gv.u, f_u) || !covers(gv.v, f_v) || !covers(gv.joined, f_joined) ||
      !covers(gv.split, f_split))
    return reject();

  GadgetNodes applied = build_gadget(g, t, A, u, v, V1, V2, V3, V4);
  ctx.gadget_disjoint += applied.disjoint;
  ctx.gadget_shared += applied.shared;
  ctx.gadget_bridge += applied.bridge;
  ctx.gadget_closure += applied.closure;
  return true;
}

void process_bicomponent(WeightedGraph& g, ReductionTrace& t, std::span<const NodeId> B_in,
                         std::optional<NodeId> c, DecomposeContext& ctx) {
  const auto B = sorted_ids(B_in);
  std::vector<NodeId> interior;
  for (NodeId x : B)
    if (!c || x != *c) interior.push_back(x);
  if (std::all_of(interior.begin(), interior.end(), [&](NodeId x) { return g.weight(x) <= 0; })) {
    remove_nodes(g, t, interior);
    ++ctx.blocks;
    return;
  }

  if (B.size() >= 4) {
    std::vector<Side> sides;
    for (auto& s : separation_sides(g, B)) {
      if (s.nodes.size() < 4) continue;
      if (c ? has(s.nodes, *c) : s.largest) continue;
      sides.push_back(std::move(s));
    }
    std::sort(sides.begin(), sides.end(), [](const Side& a, const Side& b) {
      if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
      return a.nodes < b.nodes;
    });
    for (const auto& s : sides) {
      bool positive = false;
      for (NodeId x : s.nodes)
        if (x != s.u && x != s.v && g.weight(x) > 0) positive = true;
      if (!positive) {
        replace_negative_tricomponent(g, t, s.nodes, s.u, s.v);
        ++ctx.negative_tricomponents;
        return;
      }
      if (ctx.rejected.count(s.nodes)) continue;
      if (process_tricomponent(g, t, s.nodes, s.u, s.v, ctx)) {
        ++ctx.positive_tricomponents;
        return;
      }
    }
  }

  auto [V1, w1] = ctx.solve(g, B, {});
  (void)w1;
  std::vector<NodeId> V2 = V1;
  if (c) {
    const NodeId root[] = {*c};
    V2 = ctx.solve(g, B, root).first;
  }
  if (V1 != V2) isolate(g, t, V1);
  merge(g, t, V2);
  remove_nodes(g, t, minus(B, V2));
  ++ctx.blocks;
}

DecomposeResult solve_mwcs(WeightedGraph& g, ReductionTrace& t, DecomposeContext& ctx) {
  DecomposeResult result;
  preprocess(g, t, ctx.preprocess);

  for (const auto& comp : connected_components(g)) {
    ComponentReport report;
    report.nodes = comp.size();
    for (NodeId v : comp) report.edges += g.degree(v);
    report.edges /= 2;
    const std::size_t blocks0 = ctx.blocks, pos0 = ctx.positive_tricomponents,
                      neg0 = ctx.negative_tricomponents;
    const NodeId fresh_from = g.id_bound();
    std::vector<char> member(g.id_bound(), 0);
    for (NodeId v : comp) member[v] = 1;

    while (true) {
      if (!(ctx.remaining() > 0)) throw BudgetExhausted("time limit reached during decomposition");
      std::vector<NodeId> live;
      for (NodeId v = 0; v < g.id_bound(); ++v)
        if (g.contains(v) && g.degree(v) > 0 && (v >= fresh_from || member[v])) live.push_back(v);
      if (live.empty()) break;

      InducedGraph ig = induce(g, live);
      std::optional<std::pair<std::vector<NodeId>, std::optional<NodeId>>> pick;
      for (const auto& sub : connected_components(ig.graph)) {
        BlockCutTree bct = block_cut_tree(g, ig.to_ids(sub));
        for (std::size_t b = 0; b < bct.blocks.size(); ++b) {
          if (bct.degree(b) > 1 || bct.blocks[b].size() < 2) continue;
          const auto& nodes = bct.blocks[b];
          if (!pick || nodes.size() < pick->first.size() ||
              (nodes.size() == pick->first.size() && nodes < pick->first)) {
            std::optional<NodeId> cut;
            if (bct.degree(b) == 1) cut = bct.block_cuts[b].front();
            pick = std::pair{nodes, cut};
          }
        }
      }
      if (!pick) throw PreconditionError("no leaf block found in a nontrivial component");
      process_bicomponent(g, t, pick->first, pick->second, ctx);
      preprocess(g, t, ctx.preprocess);
    }
    report.blocks = ctx.blocks - blocks0;
    report.positive_tricomponents = ctx.positive_tricomponents - pos0;
    report.negative_tricomponents = ctx.negative_tricomponents - neg0;
    result.components.push_back(report);
  }

  std::optional<NodeId> best;
  for (NodeId v : g.nodes())
    if (!best || g.weight(v) > g.weight(*best)) best = v;
  if (!best) throw PreconditionError("divide and conquer left no node; instance needs a positive weight");
  const NodeId chosen[] = {*best};
  result.nodes = expand_solution(t, chosen);
  result.objective = g.weight(*best);
  return result;
}

}  // namespace mwcs
