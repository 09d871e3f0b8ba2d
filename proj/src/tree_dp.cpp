#include <algorithm>

#include "mwcs/errors.hpp"
#include "mwcs/heuristic.hpp"

namespace mwcs {

namespace {

struct Orientation {
  std::vector<int> order;   // preorder from the root
  std::vector<int> parent;  // -1 at the root
};

Orientation orient(const CompactGraph& tree, int root) {
  const int n = tree.size();
  Orientation o;
  o.parent.assign(n, -2);
  o.order.reserve(n);
  o.parent[root] = -1;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    o.order.push_back(v);
    for (int u : tree.adj[v]) {
      if (u == o.parent[v]) continue;
      if (o.parent[u] != -2) throw PreconditionError("tree_dp: input contains a cycle");
      o.parent[u] = v;
      stack.push_back(u);
    }
  }
  if (static_cast<int>(o.order.size()) != n)
    throw PreconditionError("tree_dp: input is not connected");
  return o;
}

void check_tree(const CompactGraph& tree) {
  if (tree.size() == 0) throw PreconditionError("tree_dp: empty tree");
  if (tree.edge_count() != static_cast<std::size_t>(tree.size() - 1))
    throw PreconditionError("tree_dp: input is not a tree");
}

// Bottom-up pass; `forced[v]` marks subtrees holding a required node.
std::vector<double> accumulate(const CompactGraph& tree, const Orientation& o,
                               const std::vector<char>& forced) {
  std::vector<double> m(tree.weight);
  for (auto it = o.order.rbegin(); it != o.order.rend(); ++it) {
    int v = *it;
    int p = o.parent[v];
    if (p < 0) continue;
    m[p] += forced[v] ? m[v] : std::max(m[v], 0.0);
  }
  return m;
}

std::vector<int> collect(const CompactGraph& tree, const Orientation& o, const std::vector<double>& m,
                         const std::vector<char>& forced, int top) {
  std::vector<int> witness{top};
  std::vector<int> stack{top};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : tree.adj[v]) {
      if (u == o.parent[v]) continue;
      if (forced[u] || m[u] > 0.0) {
        witness.push_back(u);
        stack.push_back(u);
      }
    }
  }
  std::sort(witness.begin(), witness.end());
  return witness;
}

}  // namespace

TreeDpResult tree_dp(const CompactGraph& tree, int root, std::span<const int> required) {
  check_tree(tree);
  if (root < 0 || root >= tree.size()) throw PreconditionError("tree_dp: root out of range");
  Orientation o = orient(tree, root);
  std::vector<char> forced(tree.size(), 0);
  for (int r : required) forced[r] = 1;
  for (auto it = o.order.rbegin(); it != o.order.rend(); ++it)
    if (forced[*it] && o.parent[*it] >= 0) forced[o.parent[*it]] = 1;

  TreeDpResult res;
  res.best = accumulate(tree, o, forced);
  res.objective = res.best[root];
  res.witness = collect(tree, o, res.best, forced, root);
  return res;
}

TreeDpResult tree_dp_unrooted(const CompactGraph& tree) {
  check_tree(tree);
  Orientation o = orient(tree, 0);
  std::vector<char> forced(tree.size(), 0);
  TreeDpResult res;
  res.best = accumulate(tree, o, forced);
  int top = 0;
  for (int v = 1; v < tree.size(); ++v)
    if (res.best[v] > res.best[top]) top = v;
  res.objective = res.best[top];
  res.witness = collect(tree, o, res.best, forced, top);
  return res;
}

}  // namespace mwcs
