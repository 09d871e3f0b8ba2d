#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "mwcs/preprocess.hpp"

namespace mwcs {

namespace {

using Clock = std::chrono::steady_clock;

class Timed {
 public:
  explicit Timed(RuleReport& r) : report_(r), start_(Clock::now()) {}
  ~Timed() { report_.elapsed += std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  RuleReport& report_;
  Clock::time_point start_;
};

// The deleting rules assume the optimum is nonnegative; in a graph without a
// nonnegative node the best single node may be the one they delete.
bool has_nonnegative(const WeightedGraph& g) {
  for (NodeId v : g.nodes())
    if (g.weight(v) >= 0) return true;
  return false;
}

}  // namespace

RuleReport& RuleReport::operator+=(const RuleReport& other) {
  applications += other.applications;
  nodes_removed += other.nodes_removed;
  nodes_merged += other.nodes_merged;
  elapsed += other.elapsed;
  return *this;
}

RuleReport rule_isolated_negative(WeightedGraph& g, ReductionTrace& t) {
  RuleReport r{"isolated_negative"};
  Timed timer(r);
  if (!has_nonnegative(g)) return r;
  std::vector<NodeId> doomed;
  for (NodeId v : g.nodes())
    if (g.degree(v) == 0 && g.weight(v) < 0) doomed.push_back(v);
  if (doomed.empty()) return r;
  remove_nodes(g, t, doomed);
  r.applications = doomed.size();
  r.nodes_removed = doomed.size();
  return r;
}

RuleReport rule_merge_adjacent_positive(WeightedGraph& g, ReductionTrace& t) {
  RuleReport r{"merge_adjacent_positive"};
  Timed timer(r);
  std::vector<char> seen(g.id_bound(), 0);
  for (NodeId v : g.nodes()) {
    if (seen[v] || !(g.weight(v) > 0)) continue;
    std::vector<NodeId> group{v};
    seen[v] = 1;
    for (std::size_t i = 0; i < group.size(); ++i)
      for (NodeId u : g.neighbors(group[i]))
        if (!seen[u] && g.weight(u) > 0) {
          seen[u] = 1;
          group.push_back(u);
        }
    if (group.size() < 2) continue;
    std::sort(group.begin(), group.end());
    merge(g, t, group);
    ++r.applications;
    r.nodes_merged += group.size();
  }
  return r;
}

RuleReport rule_negative_chain(WeightedGraph& g, ReductionTrace& t) {
  RuleReport r{"negative_chain"};
  Timed timer(r);
  if (!has_nonnegative(g)) return r;
  auto inner = [&](NodeId v) { return g.contains(v) && g.degree(v) == 2 && g.weight(v) < 0; };
  std::vector<char> seen(g.id_bound(), 0);
  for (NodeId v : g.nodes()) {
    if (seen[v] || !inner(v)) continue;
    std::vector<NodeId> chain{v};
    seen[v] = 1;
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (NodeId u : g.neighbors(chain[i]))
        if (!seen[u] && inner(u)) {
          seen[u] = 1;
          chain.push_back(u);
        }
    if (chain.size() < 2) continue;
    std::sort(chain.begin(), chain.end());
    bool cycle = std::all_of(chain.begin(), chain.end(), [&](NodeId c) {
      const auto& nb = g.neighbors(c);
      return std::all_of(nb.begin(), nb.end(),
                         [&](NodeId u) { return std::binary_search(chain.begin(), chain.end(), u); });
    });
    if (cycle) {
      chain.erase(chain.begin());
      if (chain.size() < 2) continue;
    }
    merge(g, t, chain);
    ++r.applications;
    r.nodes_merged += chain.size();
  }
  return r;
}

RuleReport rule_mirrored_hubs(WeightedGraph& g, ReductionTrace& t) {
  RuleReport r{"mirrored_hubs"};
  Timed timer(r);
  std::map<std::vector<NodeId>, std::vector<NodeId>> groups;
  for (NodeId v : g.nodes())
    if (g.weight(v) < 0 && g.degree(v) > 0) groups[g.neighbors(v)].push_back(v);
  std::vector<NodeId> doomed;
  for (auto& [nb, members] : groups) {
    if (members.size() < 2) continue;
    NodeId keep = members.front();
    for (NodeId v : members)
      if (g.weight(v) > g.weight(keep) || (g.weight(v) == g.weight(keep) && v > keep)) keep = v;
    for (NodeId v : members)
      if (v != keep) doomed.push_back(v);
    ++r.applications;
  }
  if (doomed.empty()) return r;
  std::sort(doomed.begin(), doomed.end());
  remove_nodes(g, t, doomed);
  r.nodes_removed = doomed.size();
  return r;
}

RuleReport rule_least_cost(WeightedGraph& g, ReductionTrace& t) {
  RuleReport r{"least_cost"};
  Timed timer(r);
  if (!has_nonnegative(g)) return r;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.id_bound(), inf);
  std::vector<NodeId> touched;
  for (NodeId v : g.nodes()) {
    if (!g.contains(v) || g.degree(v) != 2 || !(g.weight(v) < 0)) continue;
    const NodeId from = g.neighbors(v)[0];
    const NodeId to = g.neighbors(v)[1];
    const double limit = -g.weight(v);

    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (NodeId u : touched) dist[u] = inf;
    touched.clear();
    dist[from] = 0.0;
    touched.push_back(from);
    pq.push({0.0, from});
    double found = inf;
    while (!pq.empty()) {
      auto [d, a] = pq.top();
      pq.pop();
      if (d > dist[a]) continue;
      if (d >= limit) break;
      if (a == to) {
        found = d;
        break;
      }
      for (NodeId b : g.neighbors(a)) {
        if (b == v) continue;
        const double nd = d + std::max(-g.weight(b), 0.0);
        if (nd < dist[b]) {
          if (dist[b] == inf) touched.push_back(b);
          dist[b] = nd;
          pq.push({nd, b});
        }
      }
    }
    if (found < limit) {
      const NodeId doomed[] = {v};
      remove_nodes(g, t, doomed);
      ++r.applications;
      ++r.nodes_removed;
    }
  }
  return r;
}

std::vector<RuleReport> preprocess(WeightedGraph& g, ReductionTrace& t, const PreprocessConfig& cfg) {
  std::vector<RuleReport> total{{"isolated_negative"},
                                {"merge_adjacent_positive"},
                                {"negative_chain"},
                                {"mirrored_hubs"},
                                {"least_cost"}};
  using Rule = std::function<RuleReport(WeightedGraph&, ReductionTrace&)>;
  auto run = [&](std::size_t slot, const Rule& rule) {
    RuleReport rep = rule(g, t);
    total[slot] += rep;
    return rep.changed();
  };

  while (true) {
    if (cfg.phase1) {
      bool changed = true;
      while (changed) {
        changed = false;
        changed |= run(0, rule_isolated_negative);
        changed |= run(1, rule_merge_adjacent_positive);
        changed |= run(2, rule_negative_chain);
      }
    }
    if (cfg.phase2 && run(3, rule_mirrored_hubs)) continue;
    if (cfg.phase3 && run(4, rule_least_cost)) continue;
    break;
  }
  return total;
}

}  // namespace mwcs
