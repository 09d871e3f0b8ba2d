#pragma once

#include <vector>

namespace mwcs {

/// Dinic max-flow on real capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  /// Returns the arc index.
  int add_arc(int tail, int head, double capacity);
  double run(int source, int sink);
  /// After run(): nodes reachable from the source in the residual network.
  std::vector<char> source_side() const;
  /// After run(): nodes that reach `sink` in the residual network.
  std::vector<char> sink_side(int sink) const;
  /// Zeroes every flow, keeping the arcs.
  void reset();
  double flow(int arc) const { return arcs_[2 * arc].flow; }
  int node_count() const { return static_cast<int>(first_.size()); }

 private:
  struct Arc {
    int head;
    int next;
    double cap;
    double flow;
  };
  bool build_levels(int source, int sink);
  double push(int v, int sink, double limit);
  double residual(const Arc& a) const { return a.cap - a.flow; }

  std::vector<int> first_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> cursor_;
  int source_ = -1;
};

}  // namespace mwcs
