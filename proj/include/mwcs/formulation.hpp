#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwcs/compact_graph.hpp"

namespace mwcs {

/// Point (x, y) of the node-separator formulation. `y` is empty for the
/// rooted formulation.
struct FractionalPoint {
  std::vector<double> x;
  std::vector<double> y;

  static FractionalPoint integral(int n, std::span<const int> selected, std::optional<int> root);
  /// Reason the point violates 0 <= y <= x <= 1 or sum(y) = 1, if it does.
  std::optional<std::string> check(double tol = 1e-9) const;
};

/// x_target <= sum_{u in boundary} x_u + sum_{u in set} y_u (unrooted), or
/// x_target <= sum_{u in boundary} x_u for a set avoiding `root` (rooted).
struct CutConstraint {
  int target = -1;
  std::vector<int> set;       // sorted, contains target
  std::vector<int> boundary;  // exactly the outside neighbours of set
  std::optional<int> root;    // rooted family: the root kept outside set

  /// lhs - rhs at the point; positive means violated.
  double violation(const FractionalPoint& p) const;
};

/// Node-split auxiliary digraph. In the unrooted form every node v becomes
/// v_in -> v_out with capacity x_v, every edge {u,v} the arcs u_out -> v_in
/// and v_out -> u_in with capacity 1, and an artificial source feeds each v_in
/// with capacity y_v. In the rooted form roots stay single nodes.
struct SupportDigraph {
  struct Arc {
    int tail;
    int head;
    double capacity;
  };
  int node_count = 0;
  std::vector<Arc> arcs;
  std::vector<int> in_node;   // per graph node
  std::vector<int> out_node;  // per graph node; equals in_node for roots
  int source = -1;            // artificial root (unrooted only)
};

SupportDigraph build_support_digraph(const CompactGraph& g, const FractionalPoint& p,
                                     std::span<const int> roots = {});

/// Cuts from the components of G[x] that miss the root. Unrooted: `p.y` must
/// select exactly one root (PreconditionError otherwise). Rooted: one cut per
/// (component, root outside it) pair.
std::vector<CutConstraint> separate_integral(const CompactGraph& g, const FractionalPoint& p,
                                             std::span<const int> roots = {});

/// Min-cut separation: for every target with x_v > 0 the minimum cut from the
/// root to v_out is compared with x_v; violated cuts (tolerance 1e-6) are
/// returned in target order. Targets are processed in parallel.
std::vector<CutConstraint> separate_fractional(const CompactGraph& g, const FractionalPoint& p,
                                               std::span<const int> roots = {});
/// Serial reference of separate_fractional.
std::vector<CutConstraint> separate_fractional_serial(const CompactGraph& g,
                                                      const FractionalPoint& p,
                                                      std::span<const int> roots = {});

struct LinearRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  char sense = '<';  // '<' (<=), '>' (>=), '=' (==)
  double rhs = 0.0;
};

struct IlpModel {
  std::vector<std::pair<std::string, double>> objective;  // maximised
  std::vector<LinearRow> rows;
  std::vector<std::string> binaries;

  /// Plain-text LP file. Row order is deterministic.
  std::string to_lp() const;
};

/// Static part of the formulation; the exponential cut families are left to
/// separation. Variables are x1..xn (and y1..yn unrooted) in input order.
IlpModel emit_ilp(const CompactGraph& g, std::span<const int> roots, bool strengthen);

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> violations;
};

/// Checks an integral point against the emitted rows and the lazy cut family.
FeasibilityReport check_feasible(const CompactGraph& g, const FractionalPoint& p,
                                 std::span<const int> roots, bool strengthen);

}  // namespace mwcs
