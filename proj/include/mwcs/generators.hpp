#pragma once

#include <random>

#include "mwcs/graph.hpp"
#include "mwcs/transforms.hpp"

namespace mwcs {

using Rng = std::mt19937_64;

/// G(n, p) with weights uniform in [lo, hi].
WeightedGraph erdos_renyi(int n, double p, double lo, double hi, Rng& rng);

/// Connected sparse instance: random spanning tree plus random extra edges up
/// to m edges. round(positive_fraction * n) nodes get weights in (0, 10], the
/// rest in [-10, 0).
WeightedGraph sparse_instance(int n, int m, double positive_fraction, Rng& rng);

/// Uniform random labelled tree (random attachment), weights in [lo, hi].
WeightedGraph random_tree(int n, double lo, double hi, Rng& rng);

/// Small biconnected pieces (cycles with chords, cliques, bridges) glued at
/// cut vertices until about `n` nodes exist. Weights uniform in [-10, 10].
WeightedGraph multi_block(int n, Rng& rng);

/// Random graph whose edges are partly subdivided by negative paths.
WeightedGraph negative_chain_instance(int n, Rng& rng);
/// Random graph with groups of negative nodes sharing one neighbourhood.
WeightedGraph twin_hub_instance(int n, Rng& rng);
/// Random graph with extra negative degree-2 nodes bridging node pairs.
WeightedGraph degree_two_instance(int n, Rng& rng);

/// PCST with n nodes and m distinct edges; profits in [0, 10], costs in [0, 5].
PcstInstance random_pcst(int n, int m, Rng& rng);

}  // namespace mwcs
