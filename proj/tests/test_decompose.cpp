#include <doctest.h>

#include <algorithm>
#include <set>

#include "mwcs/decompose.hpp"
#include "mwcs/generators.hpp"
#include "support.hpp"

using namespace mwcs;
using mwcs::testing::make_graph;
using mwcs::testing::near;

namespace {

std::vector<NodeId> all_nodes(const WeightedGraph& g) { return g.nodes(); }

bool is_biconnected(const WeightedGraph& g, const std::vector<NodeId>& nodes) {
  if (nodes.size() < 3) return is_connected_subset(g, nodes);
  auto bc = biconnected_components(induce(g, nodes).graph);
  return bc.blocks.size() == 1;
}

}  // namespace

TEST_SUITE("decompose") {
  TEST_CASE("block-cut tree") {
    auto tri = make_graph({1, 1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    auto t = block_cut_tree(tri, all_nodes(tri));
    CHECK(t.blocks.size() == 2);
    CHECK(t.cut_vertices == std::vector<NodeId>{2});

    Rng rng(1);
    auto tree = random_tree(9, -1, 1, rng);
    auto tt = block_cut_tree(tree, all_nodes(tree));
    CHECK(tt.blocks.size() == 8);
    std::vector<NodeId> internal;
    for (NodeId v : tree.nodes())
      if (tree.degree(v) > 1) internal.push_back(v);
    CHECK(tt.cut_vertices == internal);

    auto k4 = make_graph({1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto tk = block_cut_tree(k4, all_nodes(k4));
    CHECK(tk.blocks.size() == 1);
    CHECK(tk.cut_vertices.empty());

    auto split = make_graph({1, 1}, {});
    CHECK_THROWS_AS(block_cut_tree(split, all_nodes(split)), PreconditionError);
  }

  TEST_CASE("block-cut tree invariants on random graphs") {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
      auto g = multi_block(16, rng);
      for (const auto& comp : connected_components(g)) {
        auto t = block_cut_tree(g, comp);
        std::set<std::pair<NodeId, NodeId>> seen;
        std::size_t edges = 0;
        for (const auto& b : t.blocks)
          for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
              if (g.has_edge(b[i], b[j])) {
                CHECK(seen.insert({b[i], b[j]}).second);
                ++edges;
              }
        std::size_t comp_edges = 0;
        for (NodeId v : comp) comp_edges += g.degree(v);
        CHECK(edges == comp_edges / 2);
        for (std::size_t a = 0; a < t.blocks.size(); ++a)
          for (std::size_t b = a + 1; b < t.blocks.size(); ++b) {
            std::vector<NodeId> common;
            std::set_intersection(t.blocks[a].begin(), t.blocks[a].end(), t.blocks[b].begin(),
                                  t.blocks[b].end(), std::back_inserter(common));
            CHECK(common.size() <= 1);
            if (!common.empty())
              CHECK(std::binary_search(t.cut_vertices.begin(), t.cut_vertices.end(), common[0]));
          }
      }
    }
  }

  TEST_CASE("separation pairs of small shapes") {
    auto c6 = make_graph(std::vector<double>(6, 1.0), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto d = spqr_decomposition(c6, all_nodes(c6));
    CHECK_FALSE(d.components[0].cut_pair);
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (std::size_t i = 1; i < d.components.size(); ++i) pairs.insert(*d.components[i].cut_pair);
    CHECK(pairs.size() == 9);  // the nonadjacent pairs of C6
    CHECK(pairs.count({0, 3}));

    auto k4 = make_graph({1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(spqr_decomposition(k4, all_nodes(k4)).components.size() == 1);

    auto diamond = make_graph({1, 1, 1, 1}, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
    auto dd = spqr_decomposition(diamond, all_nodes(diamond));
    REQUIRE(dd.components.size() == 3);
    for (std::size_t i = 1; i < 3; ++i) CHECK(*dd.components[i].cut_pair == std::pair<NodeId, NodeId>{0, 1});

    auto path = make_graph({1, 1, 1}, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(spqr_decomposition(path, all_nodes(path)), PreconditionError);
  }

  TEST_CASE("every separation pair is found") {
    Rng rng(3);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 150; ++trial) {
      auto g = erdos_renyi(4 + static_cast<int>(rng() % 11), 0.35, -1, 1, rng);
      for (const auto& comp : connected_components(g)) {
        auto t = block_cut_tree(g, comp);
        for (const auto& b : t.blocks) {
          if (b.size() < 3) continue;
          ++checked;
          auto d = spqr_decomposition(g, b);
          std::set<std::pair<NodeId, NodeId>> found;
          std::vector<NodeId> covered;
          for (const auto& c : d.components) {
            covered.insert(covered.end(), c.nodes.begin(), c.nodes.end());
            if (!c.cut_pair) continue;
            auto [u, v] = *c.cut_pair;
            found.insert({u, v});
            std::vector<NodeId> inner;
            for (NodeId x : c.nodes)
              if (x != u && x != v) inner.push_back(x);
            CHECK(is_connected_subset(g, inner));
            std::vector<NodeId> inside;
            for (NodeId x : boundary(g, inner))
              if (std::binary_search(b.begin(), b.end(), x)) inside.push_back(x);
            CHECK(inside == std::vector<NodeId>{u, v});
          }
          auto truth = mwcs::testing::separation_pairs_brute_force(g, b);
          CHECK(std::set(truth.begin(), truth.end()) == found);
          std::sort(covered.begin(), covered.end());
          covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
          CHECK(covered == b);
        }
      }
    }
    CHECK(checked >= 100);
  }

  TEST_CASE("negative side replacement") {
    // u=0, v=1; paths 0-2-3-1 (-1,-1) and 0-4-1 (-3), other side 0-5(+9)-1
    auto g = make_graph({1, 1, -1, -1, -3, 9}, {{0, 2}, {2, 3}, {3, 1}, {0, 4}, {4, 1}, {0, 5}, {5, 1}});
    const double before = mwcs::testing::oracle(g).objective;
    auto original = g;
    ReductionTrace t(g);
    const NodeId A[] = {0, 1, 2, 3, 4};
    replace_negative_tricomponent(g, t, A, 0, 1);
    CHECK_FALSE(g.contains(4));
    CHECK(g.node_count() == 4);
    bool found = false;
    for (NodeId x : g.nodes()) found |= g.weight(x) == -2.0;
    CHECK(found);
    auto check = mwcs::testing::check_reduced(original, g, t);
    CHECK(check.objective == before);

    // equal costs: the path through the smaller id survives
    auto tie = make_graph({1, 1, -2, -2, 9}, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}});
    ReductionTrace tt(tie);
    const NodeId B[] = {0, 1, 2, 3};
    replace_negative_tricomponent(tie, tt, B, 0, 1);
    std::vector<std::vector<NodeId>> origins;
    for (NodeId x : tie.nodes()) origins.push_back(tt.origin(x));
    CHECK(std::count(origins.begin(), origins.end(), std::vector<NodeId>{2}) == 1);
    CHECK(std::count(origins.begin(), origins.end(), std::vector<NodeId>{3}) == 0);

    // direct edge: the whole interior goes
    auto direct = make_graph({1, 1, -2, -2}, {{0, 1}, {0, 2}, {2, 3}, {3, 1}});
    ReductionTrace td(direct);
    const NodeId C[] = {0, 1, 2, 3};
    replace_negative_tricomponent(direct, td, C, 0, 1);
    CHECK(direct.node_count() == 2);
  }

  TEST_CASE("leaf block removed when nonpositive") {
    auto g = make_graph({5, 1, -1, -2}, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    ReductionTrace t(g);
    DecomposeContext ctx;
    const NodeId B[] = {1, 2, 3};
    process_bicomponent(g, t, B, NodeId{1}, ctx);
    CHECK(g.node_count() == 2);
    CHECK(g.contains(1));
  }

  TEST_CASE("block gadget, V1 equals V2") {
    // host: c(+1) joins triangle {c, x(+4), y(-2)} to a path with more structure
    auto g = make_graph({1, 4, -2, -3, 2, -1, 3, -4},
                        {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 7}});
    auto original = g;
    const double before = mwcs::testing::oracle(g).objective;
    ReductionTrace t(g);
    DecomposeContext ctx;
    const NodeId B[] = {0, 1, 2};
    process_bicomponent(g, t, B, NodeId{0}, ctx);
    CHECK(g.node_count() == 6);
    bool super = false;
    for (NodeId x : g.nodes())
      if (g.weight(x) == 5.0) super = g.neighbors(x) == std::vector<NodeId>{3};
    CHECK(super);
    auto check = mwcs::testing::check_reduced(original, g, t);
    CHECK(check.objective == before);
    CHECK(check.witness_connected);
  }

  TEST_CASE("block gadget, V1 differs from V2") {
    // block {c(-10), x(+4), y(+6)}; c also sits on a triangle with the rest
    auto g = make_graph({-10, 4, 6, 3, -1}, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
    auto original = g;
    const double before = mwcs::testing::oracle(g).objective;
    ReductionTrace t(g);
    DecomposeContext ctx;
    const NodeId B[] = {0, 1, 2};
    process_bicomponent(g, t, B, NodeId{0}, ctx);
    bool isolated10 = false;
    for (NodeId x : g.nodes()) isolated10 |= g.weight(x) == 10.0 && g.degree(x) == 0;
    CHECK(isolated10);
    auto check = mwcs::testing::check_reduced(original, g, t);
    CHECK(check.objective == before);
    CHECK(check.witness_connected);
  }

  TEST_CASE("tricomponent gadget on a path side") {
    // cycle 0..7 with u=0, v=2 and side {0, 1(+7), 2}; a chord keeps the rest interesting
    auto g = make_graph({-1, 7, -1, -2, 3, -4, 2, -3},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}, {3, 6}});
    auto original = g;
    const double before = mwcs::testing::oracle(g).objective;
    ReductionTrace t(g);
    DecomposeContext ctx;
    const NodeId A[] = {0, 1, 2};
    process_tricomponent(g, t, A, 0, 2, ctx);
    auto check = mwcs::testing::check_reduced(original, g, t);
    CHECK(check.objective == before);
    CHECK(check.witness_connected);
  }

  TEST_CASE("tricomponent gadget with disjoint V1 and V2") {
    // side: u=0 - a(+5) - b(-20) - c(+5) - v=1, outside cycle 0-4-5-1
    auto g = make_graph({-1, -1, 5, -20, 5, 2, 2},
                        {{0, 2}, {2, 3}, {3, 4}, {4, 1}, {0, 5}, {5, 6}, {6, 1}});
    auto original = g;
    const double before = mwcs::testing::oracle(g).objective;
    ReductionTrace t(g);
    DecomposeContext ctx;
    const NodeId A[] = {0, 1, 2, 3, 4};
    REQUIRE(process_tricomponent(g, t, A, 0, 1, ctx));
    CHECK(ctx.gadget_disjoint == 1);
    auto check = mwcs::testing::check_reduced(original, g, t);
    CHECK(check.objective == before);
    CHECK(check.witness_connected);
    std::vector<NodeId> rest;
    for (NodeId x : g.nodes())
      if (g.degree(x) > 0) rest.push_back(x);
    CHECK(is_biconnected(g, rest));
  }

  TEST_CASE("solve_mwcs small cases") {
    auto iso = make_graph({5, 2, -1}, {});
    ReductionTrace t(iso);
    DecomposeContext ctx;
    auto r = solve_mwcs(iso, t, ctx);
    CHECK(r.objective == 5.0);
    CHECK(r.nodes == std::vector<NodeId>{0});
  }

  TEST_CASE("solve_mwcs matches the oracle on multi-block graphs") {
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      auto g = multi_block(14, rng);
      auto original = g;
      auto truth = mwcs::testing::oracle(g);
      if (truth.objective <= 0) continue;
      ReductionTrace t(g);
      DecomposeContext ctx;
      auto r = solve_mwcs(g, t, ctx);
      CHECK(near(r.objective, truth.objective));
      CHECK(is_connected_subset(original, r.nodes));
      CHECK(near(induced_weight(original, r.nodes), r.objective));
      for (NodeId v : g.nodes()) CHECK(g.degree(v) == 0);
    }
  }
}
