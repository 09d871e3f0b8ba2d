#include "mwcs/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mwcs {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

double positive_weight(Rng& rng) { return 10.0 - uniform(rng, 0.0, 10.0); }   // (0, 10]
double negative_weight(Rng& rng) { return -10.0 + uniform(rng, 0.0, 10.0); }  // [-10, 0)

void add_random_edges(WeightedGraph& g, int count, Rng& rng) {
  const int n = static_cast<int>(g.id_bound());
  if (n < 2) return;
  for (int tries = 0; count > 0 && tries < 100 * (count + 10); ++tries) {
    NodeId a = pick(rng, n), b = pick(rng, n);
    if (a == b || g.has_edge(a, b)) continue;
    g.add_edge(a, b);
    --count;
  }
}

}  // namespace

WeightedGraph erdos_renyi(int n, double p, double lo, double hi, Rng& rng) {
  WeightedGraph g;
  for (int i = 0; i < n; ++i) g.add_node(uniform(rng, lo, hi));
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

WeightedGraph sparse_instance(int n, int m, double positive_fraction, Rng& rng) {
  WeightedGraph g;
  const int positives = static_cast<int>(std::lround(positive_fraction * n));
  std::vector<char> is_positive(n, 0);
  std::fill(is_positive.begin(), is_positive.begin() + std::min(positives, n), 1);
  std::shuffle(is_positive.begin(), is_positive.end(), rng);
  for (int i = 0; i < n; ++i) g.add_node(is_positive[i] ? positive_weight(rng) : negative_weight(rng));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) g.add_edge(order[i], order[pick(rng, i)]);
  add_random_edges(g, m - (n - 1), rng);
  return g;
}

WeightedGraph random_tree(int n, double lo, double hi, Rng& rng) {
  WeightedGraph g;
  for (int i = 0; i < n; ++i) g.add_node(uniform(rng, lo, hi));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) g.add_edge(order[i], order[pick(rng, i)]);
  return g;
}

WeightedGraph multi_block(int n, Rng& rng) {
  WeightedGraph g;
  g.add_node(uniform(rng, -10, 10));
  while (static_cast<int>(g.node_count()) < n) {
    const NodeId attach = pick(rng, static_cast<int>(g.id_bound()));
    const int room = n - static_cast<int>(g.node_count());
    const int kind = pick(rng, 3);
    if (kind == 0 || room < 2) {  // bridge
      NodeId x = g.add_node(uniform(rng, -10, 10));
      g.add_edge(attach, x);
      continue;
    }
    const int size = 1 + pick(rng, std::min(room, 5));  // new nodes in the block
    std::vector<NodeId> ring{attach};
    for (int i = 0; i < size; ++i) ring.push_back(g.add_node(uniform(rng, -10, 10)));
    if (ring.size() < 3) {
      g.add_edge(ring[0], ring[1]);
      continue;
    }
    if (kind == 1) {  // cycle with a chord or two
      for (std::size_t i = 0; i < ring.size(); ++i) g.add_edge(ring[i], ring[(i + 1) % ring.size()]);
      const int chords = pick(rng, 3);
      for (int c = 0; c < chords; ++c) {
        NodeId a = ring[pick(rng, static_cast<int>(ring.size()))];
        NodeId b = ring[pick(rng, static_cast<int>(ring.size()))];
        if (a != b) g.add_edge(a, b);
      }
    } else {  // clique
      for (std::size_t i = 0; i < ring.size(); ++i)
        for (std::size_t j = i + 1; j < ring.size(); ++j) g.add_edge(ring[i], ring[j]);
    }
  }
  return g;
}

WeightedGraph negative_chain_instance(int n, Rng& rng) {
  const int base = std::max(3, n / 2);
  WeightedGraph g = erdos_renyi(base, 0.3, -10, 10, rng);
  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  for (auto [a, b] : edges) {
    if (static_cast<int>(g.node_count()) >= n) break;
    const int len = 1 + pick(rng, std::min(3, n - static_cast<int>(g.node_count())));
    g.remove_edge(a, b);
    NodeId prev = a;
    for (int i = 0; i < len; ++i) {
      NodeId x = g.add_node(negative_weight(rng));
      g.add_edge(prev, x);
      prev = x;
    }
    g.add_edge(prev, b);
  }
  return g;
}

WeightedGraph twin_hub_instance(int n, Rng& rng) {
  const int base = std::max(3, (2 * n) / 3);
  WeightedGraph g = erdos_renyi(base, 0.25, -10, 10, rng);
  while (static_cast<int>(g.node_count()) < n) {
    const int k = 2 + pick(rng, 2);
    std::set<NodeId> hood;
    for (int i = 0; i < k; ++i) hood.insert(pick(rng, base));
    const int copies = std::min(2 + pick(rng, 2), n - static_cast<int>(g.node_count()));
    for (int c = 0; c < copies; ++c) {
      // equal weights now and then to exercise the tie rule
      NodeId x = g.add_node(c > 0 && pick(rng, 3) == 0 ? g.weight(g.id_bound() - 1) : negative_weight(rng));
      for (NodeId h : hood) g.add_edge(x, h);
    }
  }
  return g;
}

WeightedGraph degree_two_instance(int n, Rng& rng) {
  const int base = std::max(3, (2 * n) / 3);
  WeightedGraph g = erdos_renyi(base, 0.3, -10, 10, rng);
  while (static_cast<int>(g.node_count()) < n) {
    NodeId a = pick(rng, base), b = pick(rng, base);
    if (a == b) continue;
    NodeId x = g.add_node(negative_weight(rng));
    g.add_edge(a, x);
    g.add_edge(x, b);
  }
  return g;
}

PcstInstance random_pcst(int n, int m, Rng& rng) {
  PcstInstance p;
  for (int i = 0; i < n; ++i) p.profit.push_back(uniform(rng, 0.0, 10.0));
  std::set<std::pair<int, int>> seen;
  for (int tries = 0; static_cast<int>(p.edges.size()) < m && tries < 1000; ++tries) {
    int a = pick(rng, n), b = pick(rng, n);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    p.edges.emplace_back(a, b);
    p.cost.push_back(uniform(rng, 0.0, 5.0));
  }
  return p;
}

}  // namespace mwcs
