#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mwcs/decompose.hpp"
#include "mwcs/io.hpp"
#include "mwcs/preprocess.hpp"
#include "mwcs/solver.hpp"

namespace mwcs {

/// no-pre: exact solver on the input; pre: preprocessing then the solver;
/// dc: preprocessing plus block and separation-pair decomposition.
enum class Mode { NoPre, Pre, Dc };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode m);

struct PipelineConfig {
  Mode mode = Mode::Dc;
  std::vector<NodeId> roots;  // rooted solve when nonempty (bypasses pre and dc)
  double time_limit = std::numeric_limits<double>::infinity();
  bool allow_empty = false;
  std::uint64_t seed = 0;
  PreprocessConfig preprocess;
  bool dual_ascent = true;
  bool cut_lp = false;  // see SolverConfig::cut_lp
};

struct PipelineStats {
  std::size_t nodes_before = 0;
  std::size_t edges_before = 0;
  std::size_t nodes_after = 0;  // after preprocessing (pre and dc)
  std::size_t edges_after = 0;
  std::size_t components_after = 0;
  std::size_t blocks = 0;
  std::size_t positive_tricomponents = 0;
  std::size_t negative_tricomponents = 0;
  std::size_t bnb_nodes = 0;
  double seconds = 0.0;
  std::vector<RuleReport> rules;
  std::vector<ComponentReport> components;
};

struct PipelineResult {
  SolutionRecord solution;
  PipelineStats stats;
};

/// Solves `g` (ids 0..n-1 as loaded). The returned node set is verified
/// against the input: connected, contains the roots, weight recomputed.
PipelineResult run_pipeline(const WeightedGraph& g, const PipelineConfig& cfg);

/// Weight bound used when no search has run: all positive weights plus the
/// roots (or the heaviest node when nothing is positive).
double trivial_upper_bound(const WeightedGraph& g, const std::vector<NodeId>& roots);

}  // namespace mwcs
