#pragma once

#include <span>

#include "mwcs/compact_graph.hpp"
#include "mwcs/heuristic.hpp"

namespace mwcs {

/// Largest instance the brute-force oracle accepts.
inline constexpr int kOracleNodeLimit = 25;
/// Largest instance solved by plain subset enumeration.
inline constexpr int kSubsetEnumerationLimit = 20;

/// Exhaustive optimum containing every root. Ties go to the lexicographically
/// smallest node list. Without `allow_empty` the best nonempty set is
/// returned; with it an all-negative optimum becomes the empty set of value 0.
/// Throws SizeLimitError above kOracleNodeLimit nodes and InfeasibleError when
/// no connected set holds all roots.
SubgraphSolution brute_force(const CompactGraph& g, std::span<const int> roots = {},
                             bool allow_empty = false);

/// All 2^n subsets filtered by connectivity, split across threads.
SubgraphSolution brute_force_subsets(const CompactGraph& g, std::span<const int> roots = {},
                                     bool allow_empty = false);
/// Serial reference of brute_force_subsets.
SubgraphSolution brute_force_subsets_serial(const CompactGraph& g, std::span<const int> roots = {},
                                            bool allow_empty = false);
/// Grows connected sets from each seed, extending only by larger indices.
SubgraphSolution brute_force_grow(const CompactGraph& g, std::span<const int> roots = {},
                                  bool allow_empty = false);

}  // namespace mwcs
