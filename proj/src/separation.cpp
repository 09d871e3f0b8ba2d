#include <algorithm>
#include <cmath>
#include <optional>

#include "mwcs/errors.hpp"
#include "mwcs/formulation.hpp"
#include "mwcs/maxflow.hpp"

namespace mwcs {

namespace {

constexpr double kViolationTol = 1e-6;

std::vector<int> set_boundary(const CompactGraph& g, const std::vector<int>& set) {
  std::vector<char> in(g.size(), 0);
  for (int v : set) in[v] = 1;
  std::vector<int> out;
  for (int v : set)
    for (int u : g.adj[v])
      if (!in[u]) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_root(std::span<const int> roots, int v) {
  return std::find(roots.begin(), roots.end(), v) != roots.end();
}

struct SeparationTask {
  int root;  // -1: artificial source of the unrooted digraph
  int target;
};

std::vector<SeparationTask> separation_tasks(const CompactGraph& g, const FractionalPoint& p,
                                             std::span<const int> roots) {
  std::vector<SeparationTask> tasks;
  if (roots.empty()) {
    for (int v = 0; v < g.size(); ++v)
      if (p.x[v] > 0.0) tasks.push_back({-1, v});
  } else {
    for (int r : roots)
      for (int v = 0; v < g.size(); ++v)
        if (v != r && p.x[v] > 0.0) tasks.push_back({r, v});
  }
  return tasks;
}

std::optional<CutConstraint> separate_one(const CompactGraph& g, const FractionalPoint& p,
                                          const SupportDigraph& d, SeparationTask task) {
  MaxFlow flow(d.node_count);
  for (const auto& a : d.arcs) flow.add_arc(a.tail, a.head, a.capacity);
  const int source = task.root < 0 ? d.source : d.in_node[task.root];
  const int sink = d.out_node[task.target];
  const double value = flow.run(source, sink);
  if (!(value < p.x[task.target] - kViolationTol)) return std::nullopt;

  auto side = flow.source_side();
  CutConstraint cut;
  cut.target = task.target;
  if (task.root >= 0) cut.root = task.root;
  for (int v = 0; v < g.size(); ++v)
    if (!side[d.in_node[v]]) cut.set.push_back(v);
  cut.boundary = set_boundary(g, cut.set);
  if (cut.violation(p) <= kViolationTol) return std::nullopt;
  return cut;
}

}  // namespace

FractionalPoint FractionalPoint::integral(int n, std::span<const int> selected, std::optional<int> root) {
  FractionalPoint p;
  p.x.assign(n, 0.0);
  for (int v : selected) p.x[v] = 1.0;
  if (root) {
    p.y.assign(n, 0.0);
    p.y[*root] = 1.0;
  }
  return p;
}

std::optional<std::string> FractionalPoint::check(double tol) const {
  if (!y.empty() && y.size() != x.size()) return "x and y differ in length";
  double sum_y = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x[v] < -tol || x[v] > 1.0 + tol) return "x out of [0,1] at " + std::to_string(v);
    if (!y.empty()) {
      if (y[v] < -tol || y[v] > x[v] + tol) return "y outside [0, x] at " + std::to_string(v);
      sum_y += y[v];
    }
  }
  if (!y.empty() && std::abs(sum_y - 1.0) > tol) return "y does not sum to one";
  return std::nullopt;
}

double CutConstraint::violation(const FractionalPoint& p) const {
  double rhs = 0.0;
  for (int u : boundary) rhs += p.x[u];
  if (!root && !p.y.empty())
    for (int u : set) rhs += p.y[u];
  return p.x[target] - rhs;
}

SupportDigraph build_support_digraph(const CompactGraph& g, const FractionalPoint& p,
                                     std::span<const int> roots) {
  const int n = g.size();
  SupportDigraph d;
  d.in_node.assign(n, -1);
  d.out_node.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (is_root(roots, v)) {
      d.in_node[v] = d.out_node[v] = d.node_count++;
    } else {
      d.in_node[v] = d.node_count++;
      d.out_node[v] = d.node_count++;
    }
  }
  if (roots.empty()) {
    d.source = d.node_count++;
    for (int v = 0; v < n; ++v) d.arcs.push_back({d.source, d.in_node[v], p.y[v]});
  }
  for (int v = 0; v < n; ++v)
    if (d.in_node[v] != d.out_node[v]) d.arcs.push_back({d.in_node[v], d.out_node[v], p.x[v]});
  for (auto [a, b] : g.edges()) {
    d.arcs.push_back({d.out_node[a], d.in_node[b], 1.0});
    d.arcs.push_back({d.out_node[b], d.in_node[a], 1.0});
  }
  return d;
}

std::vector<CutConstraint> separate_integral(const CompactGraph& g, const FractionalPoint& p,
                                             std::span<const int> roots) {
  std::vector<char> keep(g.size(), 0);
  for (int v = 0; v < g.size(); ++v) keep[v] = p.x[v] > 0.5;
  auto [sub, old_of] = induce(g, keep);
  std::vector<std::vector<int>> comps;
  for (auto& c : connected_components(sub)) {
    for (int& v : c) v = old_of[v];
    comps.push_back(std::move(c));
  }

  std::vector<CutConstraint> cuts;
  auto emit = [&](const std::vector<int>& comp, std::optional<int> root) {
    CutConstraint c;
    c.target = comp.front();
    c.set = comp;
    c.boundary = set_boundary(g, comp);
    c.root = root;
    cuts.push_back(std::move(c));
  };

  if (roots.empty()) {
    int root = -1;
    int count = 0;
    for (int v = 0; v < g.size() && v < static_cast<int>(p.y.size()); ++v)
      if (p.y[v] > 0.5) {
        root = v;
        ++count;
      }
    if (count != 1) throw PreconditionError("integral point must select exactly one root");
    for (const auto& comp : comps)
      if (!std::binary_search(comp.begin(), comp.end(), root)) emit(comp, std::nullopt);
  } else {
    for (int r : roots)
      for (const auto& comp : comps)
        if (!std::binary_search(comp.begin(), comp.end(), r)) emit(comp, r);
  }
  return cuts;
}

std::vector<CutConstraint> separate_fractional_serial(const CompactGraph& g,
                                                      const FractionalPoint& p,
                                                      std::span<const int> roots) {
  SupportDigraph d = build_support_digraph(g, p, roots);
  std::vector<CutConstraint> cuts;
  for (const auto& task : separation_tasks(g, p, roots))
    if (auto c = separate_one(g, p, d, task)) cuts.push_back(std::move(*c));
  return cuts;
}

std::vector<CutConstraint> separate_fractional(const CompactGraph& g, const FractionalPoint& p,
                                               std::span<const int> roots) {
  SupportDigraph d = build_support_digraph(g, p, roots);
  const auto tasks = separation_tasks(g, p, roots);
  std::vector<std::optional<CutConstraint>> found(tasks.size());
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) found[i] = separate_one(g, p, d, tasks[i]);

  std::vector<CutConstraint> cuts;
  for (auto& c : found)
    if (c) cuts.push_back(std::move(*c));
  return cuts;
}

}  // namespace mwcs
