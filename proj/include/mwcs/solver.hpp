#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "mwcs/compact_graph.hpp"
#include "mwcs/heuristic.hpp"

namespace mwcs {

struct Budget {
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  std::size_t node_limit = std::numeric_limits<std::size_t>::max();
};

/// Called with (lower, upper) on the optimum after every evaluated subproblem.
using BoundObserver = std::function<void(double lower, double upper)>;

struct SolverConfig {
  Budget budget;
  bool dual_ascent = true;
  bool reduced_cost_fixing = true;
  bool cut_lp = false;  // directed-cut LP bound after dual ascent; slow on large networks
  BoundObserver observer;
};

/// Linear back-off: an attempt is due once `counter >= period`; a successful
/// attempt lengthens the period by one. The counter restarts after every attempt.
class BackoffSchedule {
 public:
  /// Counts one opportunity and says whether to attempt.
  bool should_attempt() { return ++counter_ >= period_; }
  void record(bool success) {
    counter_ = 0;
    if (success) ++period_;
  }
  int period() const { return period_; }

 private:
  int period_ = 1;
  int counter_ = 0;
};

/// Node states inside a subproblem.
enum : signed char { kExcluded = -1, kUndecided = 0, kIncluded = 1 };

/// Wong-style dual ascent on the Steiner arborescence view of a rooted
/// subproblem. Included nodes and one copy per undecided positive node are
/// terminals; entering a negative node costs its absolute weight; a copy can
/// be reached from the root at the price of its node's weight.
struct DualAscentResult {
  bool feasible = true;
  double lower = 0.0;  // lower bound on the arborescence cost
  double upper = 0.0;  // implied upper bound on the subproblem's weight
  std::vector<double> dist_in;   // reduced-cost distance from the root
  std::vector<double> dist_out;  // reduced-cost distance to the nearest terminal
  std::vector<char> zero_reach;  // reachable from the root along zero reduced cost
  std::vector<double> copy_rc;   // reduced cost of the root arc of v's copy (0 without a copy)
};

DualAscentResult dual_ascent(const CompactGraph& g, int root, std::span<const signed char> state,
                             bool distances = true);

/// Best-first branch and bound. Rooted when `roots` is nonempty. Throws
/// InfeasibleError when the roots are not connected in g.
SubgraphSolution bnb_drive(const CompactGraph& g, std::span<const int> roots,
                           const SolverConfig& cfg = {});

SubgraphSolution solve_unrooted(const CompactGraph& g, const SolverConfig& cfg = {});
/// Throws PreconditionError for an empty root set.
SubgraphSolution solve_rooted(const CompactGraph& g, std::span<const int> roots,
                              const SolverConfig& cfg = {});

}  // namespace mwcs
