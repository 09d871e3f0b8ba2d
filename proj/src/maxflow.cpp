#include "mwcs/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace mwcs {

namespace {
constexpr double kFlowEps = 1e-12;
}

MaxFlow::MaxFlow(int nodes) : first_(nodes, -1) {}

int MaxFlow::add_arc(int tail, int head, double capacity) {
  int id = static_cast<int>(arcs_.size() / 2);
  arcs_.push_back({head, first_[tail], capacity, 0.0});
  first_[tail] = static_cast<int>(arcs_.size() - 1);
  arcs_.push_back({tail, first_[head], 0.0, 0.0});
  first_[head] = static_cast<int>(arcs_.size() - 1);
  return id;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(first_.size(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int a = first_[v]; a >= 0; a = arcs_[a].next) {
      const Arc& arc = arcs_[a];
      if (level_[arc.head] < 0 && residual(arc) > kFlowEps) {
        level_[arc.head] = level_[v] + 1;
        q.push(arc.head);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::push(int v, int sink, double limit) {
  if (v == sink) return limit;
  for (int& a = cursor_[v]; a >= 0; a = arcs_[a].next) {
    Arc& arc = arcs_[a];
    if (level_[arc.head] != level_[v] + 1 || residual(arc) <= kFlowEps) continue;
    double pushed = push(arc.head, sink, std::min(limit, residual(arc)));
    if (pushed > kFlowEps) {
      arc.flow += pushed;
      arcs_[a ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::run(int source, int sink) {
  source_ = source;
  double total = 0.0;
  if (source == sink) return std::numeric_limits<double>::infinity();
  while (build_levels(source, sink)) {
    cursor_ = first_;
    while (double f = push(source, sink, std::numeric_limits<double>::infinity())) total += f;
  }
  return total;
}

std::vector<char> MaxFlow::source_side() const {
  std::vector<char> seen(first_.size(), 0);
  if (source_ < 0) return seen;
  std::vector<int> stack{source_};
  seen[source_] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a = first_[v]; a >= 0; a = arcs_[a].next) {
      const Arc& arc = arcs_[a];
      if (!seen[arc.head] && residual(arc) > kFlowEps) {
        seen[arc.head] = 1;
        stack.push_back(arc.head);
      }
    }
  }
  return seen;
}

std::vector<char> MaxFlow::sink_side(int sink) const {
  std::vector<char> seen(first_.size(), 0);
  std::vector<int> stack{sink};
  seen[sink] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    // arc a leaves v; its twin a^1 runs from arc.head into v
    for (int a = first_[v]; a >= 0; a = arcs_[a].next) {
      const Arc& twin = arcs_[a ^ 1];
      const int u = arcs_[a].head;
      if (!seen[u] && residual(twin) > kFlowEps) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

void MaxFlow::reset() {
  for (auto& a : arcs_) a.flow = 0.0;
  source_ = -1;
}

}  // namespace mwcs
