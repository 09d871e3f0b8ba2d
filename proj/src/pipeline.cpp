#include "mwcs/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "mwcs/compact_graph.hpp"
#include "mwcs/errors.hpp"

namespace mwcs {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SolverConfig solver_config(const PipelineConfig& cfg, double time_limit) {
  SolverConfig s;
  s.budget.time_limit = time_limit;
  s.dual_ascent = cfg.dual_ascent;
  s.reduced_cost_fixing = cfg.dual_ascent;
  s.cut_lp = cfg.cut_lp;
  return s;
}

void check_roots(const WeightedGraph& g, const std::vector<NodeId>& roots) {
  for (NodeId r : roots)
    if (!g.contains(r)) throw PreconditionError("root " + std::to_string(r) + " is not a node");
  for (const auto& comp : connected_components(g)) {
    const bool first = std::binary_search(comp.begin(), comp.end(), roots.front());
    for (NodeId r : roots)
      if (first != std::binary_search(comp.begin(), comp.end(), r))
        throw InfeasibleError("roots lie in different connected components");
  }
}

SolutionRecord heuristic_fallback(const WeightedGraph& g, const std::vector<NodeId>& roots) {
  InducedGraph ig = induce_all(g);
  std::vector<int> local;
  for (NodeId r : roots) local.push_back(ig.local(r));
  SubgraphSolution h = primal_heuristic(ig.graph, {}, local);
  SolutionRecord s;
  s.nodes = ig.to_ids(h.nodes);
  s.objective = h.objective;
  s.optimal = false;
  s.lower = h.objective;
  s.upper = std::max(h.objective, trivial_upper_bound(g, roots));
  return s;
}

SolutionRecord from_subgraph(const InducedGraph& ig, const SubgraphSolution& s) {
  SolutionRecord r;
  r.nodes = ig.to_ids(s.nodes);
  r.objective = s.objective;
  r.optimal = s.optimal;
  r.lower = s.objective;
  r.upper = s.optimal ? s.objective : std::max(s.objective, s.upper);
  return r;
}

void verify(const WeightedGraph& g, const std::vector<NodeId>& roots, SolutionRecord& s) {
  if (!is_connected_subset(g, s.nodes)) throw std::logic_error("solver returned a disconnected node set");
  for (NodeId r : roots)
    if (!std::binary_search(s.nodes.begin(), s.nodes.end(), r))
      throw std::logic_error("solver dropped a root");
  const double w = induced_weight(g, s.nodes);
  if (std::abs(w - s.objective) > 1e-6 * std::max(1.0, std::abs(w)))
    throw std::logic_error("reported objective differs from the recomputed weight");
  s.objective = w;
  s.lower = w;
  s.upper = s.optimal ? w : std::max(s.upper, w);
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "no-pre") return Mode::NoPre;
  if (name == "pre") return Mode::Pre;
  if (name == "dc") return Mode::Dc;
  throw PreconditionError("unknown mode '" + name + "'");
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::NoPre: return "no-pre";
    case Mode::Pre: return "pre";
    case Mode::Dc: return "dc";
  }
  return "?";
}

double trivial_upper_bound(const WeightedGraph& g, const std::vector<NodeId>& roots) {
  double sum = 0.0;
  bool positive = false;
  double heaviest = -std::numeric_limits<double>::infinity();
  for (NodeId v : g.nodes()) {
    heaviest = std::max(heaviest, g.weight(v));
    const bool root = std::find(roots.begin(), roots.end(), v) != roots.end();
    if (root || g.weight(v) > 0) sum += g.weight(v);
    if (g.weight(v) > 0) positive = true;
  }
  if (roots.empty() && !positive) return g.node_count() ? heaviest : 0.0;
  return sum;
}

PipelineResult run_pipeline(const WeightedGraph& g, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  PipelineResult res;
  PipelineStats& st = res.stats;
  st.nodes_before = st.nodes_after = g.node_count();
  st.edges_before = st.edges_after = g.edge_count();
  st.components_after = connected_components(g).size();
  std::vector<NodeId> roots = cfg.roots;
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (!roots.empty()) check_roots(g, roots);

  SolutionRecord& sol = res.solution;
  auto finish = [&] {
    if (g.node_count() > 0 && !(sol.nodes.empty() && cfg.allow_empty)) verify(g, roots, sol);
    if (cfg.allow_empty && roots.empty() && sol.objective < 0) {
      sol.nodes.clear();
      sol.objective = 0.0;
      sol.lower = std::max(sol.lower, 0.0);
      sol.upper = std::max(sol.upper, 0.0);
      if (sol.optimal) sol.lower = sol.upper = 0.0;
    }
    st.seconds = elapsed_since(start);
    return res;
  };

  if (g.node_count() == 0) {
    if (!roots.empty()) throw InfeasibleError("roots given for an empty graph");
    sol = SolutionRecord{};
    return finish();
  }
  if (!(cfg.time_limit > 0)) {
    sol = heuristic_fallback(g, roots);
    return finish();
  }

  double heaviest = -std::numeric_limits<double>::infinity();
  NodeId heaviest_id = 0;
  for (NodeId v : g.nodes())
    if (g.weight(v) > heaviest) {
      heaviest = g.weight(v);
      heaviest_id = v;
    }

  if (!roots.empty() || cfg.mode == Mode::NoPre) {
    InducedGraph ig = induce_all(g);
    std::vector<int> local;
    for (NodeId r : roots) local.push_back(ig.local(r));
    SubgraphSolution s = bnb_drive(ig.graph, local, solver_config(cfg, cfg.time_limit));
    st.bnb_nodes = s.bnb_nodes;
    sol = from_subgraph(ig, s);
    return finish();
  }

  if (!(heaviest > 0)) {
    sol.nodes = {heaviest_id};
    sol.objective = sol.lower = sol.upper = heaviest;
    sol.optimal = true;
    return finish();
  }

  WeightedGraph work = g;
  ReductionTrace trace(work);
  if (cfg.mode == Mode::Pre) {
    st.rules = preprocess(work, trace, cfg.preprocess);
    st.nodes_after = work.node_count();
    st.edges_after = work.edge_count();
    st.components_after = connected_components(work).size();
    InducedGraph ig = induce_all(work);
    SubgraphSolution s = bnb_drive(ig.graph, {}, solver_config(cfg, cfg.time_limit - elapsed_since(start)));
    st.bnb_nodes = s.bnb_nodes;
    SolutionRecord r = from_subgraph(ig, s);
    r.nodes = expand_solution(trace, r.nodes);
    sol = r;
    return finish();
  }

  DecomposeContext ctx;
  ctx.solver = solver_config(cfg, cfg.time_limit);
  ctx.preprocess = cfg.preprocess;
  ctx.start = start;
  WeightedGraph probe = g;
  ReductionTrace probe_trace(probe);
  st.rules = preprocess(probe, probe_trace, cfg.preprocess);
  st.nodes_after = probe.node_count();
  st.edges_after = probe.edge_count();
  st.components_after = connected_components(probe).size();
  try {
    DecomposeResult d = solve_mwcs(work, trace, ctx);
    sol.nodes = d.nodes;
    sol.objective = d.objective;
    sol.optimal = true;
    sol.lower = sol.upper = d.objective;
    st.components = std::move(d.components);
  } catch (const BudgetExhausted&) {
    sol = heuristic_fallback(g, roots);
    // a zero budget still yields the solver's multi-start incumbent
    if (probe.node_count() > 0) {
      InducedGraph ig = induce_all(probe);
      SolutionRecord r = from_subgraph(ig, bnb_drive(ig.graph, {}, solver_config(cfg, 0.0)));
      r.nodes = expand_solution(probe_trace, r.nodes);
      r.optimal = false;
      if (r.objective > sol.objective) {
        r.upper = std::max(r.objective, std::min(r.upper, sol.upper));
        sol = std::move(r);
      }
    }
  }
  st.bnb_nodes = ctx.bnb_nodes;
  st.blocks = ctx.blocks;
  st.positive_tricomponents = ctx.positive_tricomponents;
  st.negative_tricomponents = ctx.negative_tricomponents;
  return finish();
}

}  // namespace mwcs
