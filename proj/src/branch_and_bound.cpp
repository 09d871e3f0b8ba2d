#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <queue>

#include "mwcs/cut_lp.hpp"
#include "mwcs/errors.hpp"
#include "mwcs/solver.hpp"

namespace mwcs {

namespace {

constexpr double kPruneTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kPathStarts = 64;  // path heuristic starts for the first incumbent

using Clock = std::chrono::steady_clock;

struct Incumbent {
  bool found = false;
  double value = -kInf;
  std::vector<int> nodes;

  bool offer(double v, std::vector<int> s) {
    if (found && !(v > value + kPruneTol)) return false;
    found = true;
    value = v;
    std::sort(s.begin(), s.end());
    nodes = std::move(s);
    return true;
  }
};

struct OpenNode {
  double priority;
  std::size_t id;
  std::vector<signed char> state;
  std::vector<int> cuts;  // pooled LP cuts binding at the parent
};

struct OpenOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.id > b.id;
  }
};

/// Shared bookkeeping of one bnb_drive call.
class Search {
 public:
  Search(const CompactGraph& g, const SolverConfig& cfg)
      : g_(g), cfg_(cfg), start_(Clock::now()) {}

  Incumbent incumbent;
  std::size_t evaluated = 0;
  bool stopped = false;

  bool out_of_budget() {
    if (stopped) return true;
    if (evaluated >= cfg_.budget.node_limit) stopped = true;
    const double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
    if (!(elapsed < cfg_.budget.time_limit)) stopped = true;
    return stopped;
  }

  void notify(double upper) {
    if (cfg_.observer) cfg_.observer(incumbent.found ? incumbent.value : -kInf, upper);
  }

  /// Runs one rooted search. `initial` holds the root's state; returns the
  /// largest bound left open when the budget ran out (-inf when finished).
  double run(int root, std::vector<signed char> initial, double initial_bound, double outer_upper);

 private:
  enum class Outcome { Pruned, Infeasible, Leaf, Branch };

  struct Evaluation {
    Outcome outcome = Outcome::Pruned;
    double bound = kInf;
    DualAscentResult da;
    CutLp::Result lp;  // empty node_value when the LP was not solved
  };

  /// `inherited` is the parent's bound, valid for the whole subtree.
  Evaluation evaluate(int root, std::vector<signed char>& state, std::span<const int> cuts,
                      double inherited, bool force_heuristic);
  void run_heuristics(int root, const std::vector<signed char>& state, const DualAscentResult* da);
  bool try_heuristic(int root, const std::vector<signed char>& state, const std::vector<char>& keep,
                     std::span<const double> xbar_full);
  /// Fixes undecided nodes from reduced-cost distances; true when any changed.
  bool fix_by_reduced_costs(std::vector<signed char>& state, double upper, std::span<const double> dist_in,
                            std::span<const double> dist_out, std::span<const double> copy_rc);
  bool included_connected(int root, const std::vector<signed char>& state) const;

  const CompactGraph& g_;
  const SolverConfig& cfg_;
  Clock::time_point start_;
  BackoffSchedule backoff_;
  std::size_t next_id_ = 0;
  std::unique_ptr<CutLp> lp_;
};

bool Search::included_connected(int root, const std::vector<signed char>& state) const {
  std::vector<char> seen(g_.size(), 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g_.adj[v])
      if (!seen[u] && state[u] == kIncluded) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  for (int v = 0; v < g_.size(); ++v)
    if (state[v] == kIncluded && !seen[v]) return false;
  return true;
}

bool Search::try_heuristic(int root, const std::vector<signed char>& state, const std::vector<char>& keep,
                           std::span<const double> xbar_full) {
  const int n = g_.size();
  auto [sub, old_of] = induce(g_, keep);
  std::vector<int> local(n, -1);
  for (int i = 0; i < static_cast<int>(old_of.size()); ++i) local[old_of[i]] = i;
  if (local[root] < 0) return false;
  std::vector<int> roots{local[root]};
  for (int v = 0; v < n; ++v)
    if (state[v] == kIncluded && v != root) {
      if (local[v] < 0) return false;
      roots.push_back(local[v]);
    }
  std::vector<double> xbar;
  if (!xbar_full.empty())
    for (int v : old_of) xbar.push_back(xbar_full[v]);
  SubgraphSolution s;
  try {
    s = primal_heuristic(sub, xbar, roots);
  } catch (const InfeasibleError&) {
    return false;
  }
  std::vector<int> nodes;
  for (int v : s.nodes) nodes.push_back(old_of[v]);
  return incumbent.offer(s.objective, std::move(nodes));
}

void Search::run_heuristics(int root, const std::vector<signed char>& state,
                            const DualAscentResult* da) {
  const int n = g_.size();
  std::vector<char> open(n, 0);
  for (int v = 0; v < n; ++v) open[v] = state[v] != kExcluded;

  std::vector<double> xbar;
  if (da) {
    double worst = 0.0;
    for (int v = 0; v < n; ++v)
      if (open[v] && state[v] != kIncluded && g_.weight[v] < 0) worst = std::max(worst, -g_.weight[v]);
    xbar.assign(n, 1.0);
    for (int v = 0; v < n; ++v)
      if (open[v] && state[v] != kIncluded && g_.weight[v] < 0 && worst > 0)
        xbar[v] = 1.0 - (-g_.weight[v]) / worst;
  }
  try_heuristic(root, state, open, xbar);
  {
    std::vector<int> required{root};
    for (int v = 0; v < n; ++v)
      if (state[v] == kIncluded && v != root) required.push_back(v);
    try {
      auto s = path_heuristic(g_, required, open);
      incumbent.offer(s.objective, std::move(s.nodes));
    } catch (const InfeasibleError&) {
    }
  }
  if (da && !da->zero_reach.empty()) {
    std::vector<char> keep(n, 0);
    for (int v = 0; v < n; ++v) keep[v] = open[v] && da->zero_reach[v];
    try_heuristic(root, state, keep, {});
  }
}

bool Search::fix_by_reduced_costs(std::vector<signed char>& state, double upper,
                                  std::span<const double> dist_in, std::span<const double> dist_out,
                                  std::span<const double> copy_rc) {
  bool fixed = false;
  for (int v = 0; v < g_.size(); ++v) {
    if (state[v] != kUndecided) continue;
    const double through = upper - dist_in[v] - dist_out[v];
    if (through <= incumbent.value + kPruneTol) {
      state[v] = kExcluded;
      fixed = true;
    } else if (upper - copy_rc[v] <= incumbent.value + kPruneTol) {
      // leaving v out pays for its copy's root arc
      state[v] = kIncluded;
      fixed = true;
    }
  }
  return fixed;
}

Search::Evaluation Search::evaluate(int root, std::vector<signed char>& state, std::span<const int> cuts,
                                    double inherited, bool force_heuristic) {
  const int n = g_.size();
  Evaluation ev;
  ev.bound = inherited;
  const double before = incumbent.found ? incumbent.value : -kInf;
  bool heuristic_done = false;

  for (int round = 0; round < 3; ++round) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g_.adj[v])
        if (!seen[u] && state[u] != kExcluded) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    double bound = 0.0;
    bool positive_left = false;
    for (int v = 0; v < n; ++v) {
      if (state[v] == kExcluded) continue;
      if (!seen[v]) {
        if (state[v] == kIncluded) {
          ev.outcome = Outcome::Infeasible;
          return ev;
        }
        state[v] = kExcluded;
        continue;
      }
      if (state[v] == kIncluded) {
        bound += g_.weight[v];
      } else if (g_.weight[v] > 0) {
        bound += g_.weight[v];
        positive_left = true;
      }
    }
    ev.bound = std::min(ev.bound, bound);
    if (incumbent.found && ev.bound <= incumbent.value + kPruneTol) {
      ev.outcome = Outcome::Pruned;
      return ev;
    }
    if (!positive_left && included_connected(root, state)) break;
    if (!cfg_.dual_ascent) break;

    ev.da = dual_ascent(g_, root, state, cfg_.reduced_cost_fixing);
    if (!ev.da.feasible) {
      ev.outcome = Outcome::Infeasible;
      return ev;
    }
    ev.bound = std::min(ev.bound, ev.da.upper);
    if (incumbent.found && ev.bound <= incumbent.value + kPruneTol) {
      ev.outcome = Outcome::Pruned;
      return ev;
    }
    if (!heuristic_done && (force_heuristic || backoff_.should_attempt())) {
      heuristic_done = true;
      run_heuristics(root, state, &ev.da);
      const bool improved = incumbent.found && incumbent.value > before;
      if (!force_heuristic) backoff_.record(improved);
      if (incumbent.found && ev.bound <= incumbent.value + kPruneTol) {
        ev.outcome = Outcome::Pruned;
        return ev;
      }
    }
    if (!cfg_.reduced_cost_fixing || !incumbent.found) break;
    if (!fix_by_reduced_costs(state, ev.da.upper, ev.da.dist_in, ev.da.dist_out, ev.da.copy_rc)) break;
  }

  auto leaf = [&] {
    for (int v = 0; v < n; ++v)
      if (state[v] == kUndecided && g_.weight[v] > 0) return false;
    return included_connected(root, state);
  };
  if (lp_ && !leaf()) {
    std::vector<int> warm(cuts.begin(), cuts.end());
    for (int round = 0; round < 3; ++round) {
      ev.lp = lp_->solve(state, warm, incumbent.found ? incumbent.value : -kInf);
      if (!ev.lp.feasible) {
        ev.outcome = Outcome::Infeasible;
        return ev;
      }
      ev.bound = std::min(ev.bound, ev.lp.upper);
      if (incumbent.found && ev.bound <= incumbent.value + kPruneTol) {
        ev.outcome = Outcome::Pruned;
        return ev;
      }
      if (round == 0) {
        std::vector<char> open(n, 0), support(n, 0);
        for (int v = 0; v < n; ++v) {
          open[v] = state[v] != kExcluded;
          support[v] = open[v] && ev.lp.node_value[v] > 1e-6;
        }
        try_heuristic(root, state, open, ev.lp.node_value);
        try_heuristic(root, state, support, ev.lp.node_value);
        if (incumbent.found && ev.bound <= incumbent.value + kPruneTol) {
          ev.outcome = Outcome::Pruned;
          return ev;
        }
      }
      warm = ev.lp.binding;
      if (!cfg_.reduced_cost_fixing || !incumbent.found) break;
      if (!fix_by_reduced_costs(state, ev.lp.upper, ev.lp.dist_in, ev.lp.dist_out, ev.lp.copy_rc)) break;
      if (leaf()) break;
    }
  }

  if (!cfg_.dual_ascent && !heuristic_done && (force_heuristic || backoff_.should_attempt())) {
    run_heuristics(root, state, nullptr);
    if (!force_heuristic) backoff_.record(incumbent.found && incumbent.value > before);
    if (incumbent.found && ev.bound <= incumbent.value + kPruneTol) {
      ev.outcome = Outcome::Pruned;
      return ev;
    }
  }

  bool positive_left = false;
  for (int v = 0; v < n; ++v)
    if (state[v] == kUndecided && g_.weight[v] > 0) positive_left = true;
  if (!positive_left && included_connected(root, state)) {
    std::vector<int> nodes;
    double value = 0.0;
    for (int v = 0; v < n; ++v)
      if (state[v] == kIncluded) {
        nodes.push_back(v);
        value += g_.weight[v];
      }
    incumbent.offer(value, std::move(nodes));
    ev.outcome = Outcome::Leaf;
    return ev;
  }
  ev.outcome = Outcome::Branch;
  return ev;
}

double Search::run(int root, std::vector<signed char> initial, double initial_bound,
                   double outer_upper) {
  const int n = g_.size();
  lp_.reset();
  if (cfg_.cut_lp && cfg_.dual_ascent) lp_ = std::make_unique<CutLp>(g_, root, initial);
  std::priority_queue<OpenNode, std::vector<OpenNode>, OpenOrder> open;
  open.push({initial_bound, next_id_++, std::move(initial), {}});
  bool first = true;

  while (!open.empty()) {
    if (incumbent.found && open.top().priority <= incumbent.value + kPruneTol) break;
    if (out_of_budget()) return open.top().priority;
    OpenNode node = open.top();
    open.pop();
    ++evaluated;
    Evaluation ev = evaluate(root, node.state, node.cuts, node.priority, first);
    first = false;

    if (ev.outcome == Outcome::Branch) {
      int pick = -1;
      if (!ev.lp.node_value.empty()) {
        // most fractional LP in-flow, heavier nodes first on ties
        double best = 1e-6;
        for (int v = 0; v < n; ++v) {
          if (node.state[v] != kUndecided) continue;
          const double y = ev.lp.node_value[v];
          const double frac = std::min(y, 1.0 - y);
          if (frac > best + 1e-9 ||
              (pick >= 0 && frac > best - 1e-9 && std::abs(g_.weight[v]) > std::abs(g_.weight[pick]))) {
            best = std::max(best, frac);
            pick = v;
          }
        }
      }
      if (pick < 0)
        for (int v = 0; v < n; ++v)
          if (node.state[v] == kUndecided && g_.weight[v] > 0 &&
              (pick < 0 || g_.weight[v] > g_.weight[pick]))
            pick = v;
      if (pick < 0) {
        double best = kInf;
        const bool have_dist = !ev.da.dist_in.empty();
        for (int v = 0; v < n && (have_dist || pick < 0); ++v) {
          if (node.state[v] != kUndecided) continue;
          if (have_dist) {
            const double d = ev.da.dist_in[v] + ev.da.dist_out[v];
            if (d < best) {
              best = d;
              pick = v;
            }
          } else {
            for (int u : g_.adj[v])
              if (node.state[u] == kIncluded) pick = v;
          }
        }
        if (pick < 0)
          for (int v = 0; v < n && pick < 0; ++v)
            if (node.state[v] == kUndecided) pick = v;
      }
      if (pick >= 0) {
        auto with = node.state;
        with[pick] = kIncluded;
        auto without = std::move(node.state);
        without[pick] = kExcluded;
        open.push({ev.bound, next_id_++, std::move(with), ev.lp.binding});
        open.push({ev.bound, next_id_++, std::move(without), std::move(ev.lp.binding)});
      }
    }

    double upper = incumbent.found ? incumbent.value : -kInf;
    if (!open.empty()) upper = std::max(upper, open.top().priority);
    notify(std::max(upper, outer_upper));
  }
  return -kInf;
}

SubgraphSolution finish(const Search& s, double open_upper) {
  SubgraphSolution out;
  out.nodes = s.incumbent.nodes;
  out.objective = s.incumbent.value;
  out.bnb_nodes = s.evaluated;
  out.optimal = open_upper == -kInf;
  out.upper = out.optimal ? out.objective : std::max(out.objective, open_upper);
  return out;
}

SubgraphSolution solve_unrooted_impl(const CompactGraph& g, const SolverConfig& cfg) {
  const int n = g.size();
  SubgraphSolution out;
  if (n == 0) {
    out.optimal = true;
    out.upper = 0.0;
    return out;
  }
  std::vector<int> positives;
  for (int v = 0; v < n; ++v)
    if (g.weight[v] > 0) positives.push_back(v);
  if (positives.empty()) {
    int best = 0;
    for (int v = 1; v < n; ++v)
      if (g.weight[v] > g.weight[best]) best = v;
    out.nodes = {best};
    out.objective = g.weight[best];
    out.optimal = true;
    out.upper = out.objective;
    return out;
  }
  std::stable_sort(positives.begin(), positives.end(),
                   [&](int a, int b) { return g.weight[a] > g.weight[b]; });
  std::vector<double> suffix(positives.size() + 1, 0.0);
  for (std::size_t i = positives.size(); i-- > 0;) suffix[i] = suffix[i + 1] + g.weight[positives[i]];

  Search search(g, cfg);
  auto start = primal_heuristic(g);
  search.incumbent.offer(start.objective, start.nodes);
  for (std::size_t i = 0; i < positives.size() && i < kPathStarts; ++i) {
    const int r[] = {positives[i]};
    auto s = path_heuristic(g, r);
    search.incumbent.offer(s.objective, std::move(s.nodes));
  }

  std::vector<signed char> state(n, kUndecided);
  for (std::size_t i = 0; i < positives.size(); ++i) {
    const int p = positives[i];
    auto initial = state;
    initial[p] = kIncluded;
    const double later = i + 1 < positives.size() ? suffix[i + 1] : -kInf;
    if (search.out_of_budget()) return finish(search, suffix[i]);
    double open_upper = search.run(p, std::move(initial), suffix[i], later);
    if (open_upper != -kInf) return finish(search, std::max(open_upper, later));
    state[p] = kExcluded;
  }
  return finish(search, -kInf);
}

SubgraphSolution solve_rooted_impl(const CompactGraph& g, std::span<const int> roots,
                                   const SolverConfig& cfg) {
  const int n = g.size();
  for (int r : roots)
    if (r < 0 || r >= n) throw PreconditionError("root index out of range");
  {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{roots.front()};
    seen[roots.front()] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    for (int r : roots)
      if (!seen[r]) throw InfeasibleError("roots lie in different connected components");
  }

  Search search(g, cfg);
  auto start = primal_heuristic(g, {}, roots);
  search.incumbent.offer(start.objective, start.nodes);
  {
    auto s = path_heuristic(g, roots);
    search.incumbent.offer(s.objective, std::move(s.nodes));
  }
  std::vector<signed char> state(n, kUndecided);
  for (int r : roots) state[r] = kIncluded;
  double trivial = 0.0;
  for (int v = 0; v < n; ++v)
    if (state[v] == kIncluded || g.weight[v] > 0) trivial += g.weight[v];
  if (search.out_of_budget()) return finish(search, trivial);
  return finish(search, search.run(roots.front(), std::move(state), trivial, -kInf));
}

}  // namespace

SubgraphSolution bnb_drive(const CompactGraph& g, std::span<const int> roots, const SolverConfig& cfg) {
  return roots.empty() ? solve_unrooted_impl(g, cfg) : solve_rooted_impl(g, roots, cfg);
}

SubgraphSolution solve_unrooted(const CompactGraph& g, const SolverConfig& cfg) {
  return solve_unrooted_impl(g, cfg);
}

SubgraphSolution solve_rooted(const CompactGraph& g, std::span<const int> roots, const SolverConfig& cfg) {
  if (roots.empty()) throw PreconditionError("rooted solve needs at least one root");
  return solve_rooted_impl(g, roots, cfg);
}

}  // namespace mwcs
