// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Run with a criterion number to check only that one.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "mwcs/bench.hpp"
#include "mwcs/decompose.hpp"
#include "mwcs/errors.hpp"
#include "mwcs/formulation.hpp"
#include "mwcs/generators.hpp"
#include "mwcs/heuristic.hpp"
#include "mwcs/io.hpp"
#include "mwcs/oracle.hpp"
#include "mwcs/pipeline.hpp"
#include "mwcs/preprocess.hpp"
#include "mwcs/transforms.hpp"
#include "support.hpp"

using namespace mwcs;
using mwcs::testing::near;
namespace fs = std::filesystem;

namespace {

constexpr double kTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MWCS_CLI_PATH) + " " + args;
  return WEXITSTATUS(std::system(cmd.c_str()));
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mwcs_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// 1: every mode returns the oracle optimum
Verdict oracle_equivalence() {
  Rng rng(101);
  const double ps[] = {0.2, 0.35, 0.5};
  int instances = 0, mismatches = 0, bad_witness = 0;
  std::string first;
  auto one = [&](const WeightedGraph& g, const std::string& label) {
    ++instances;
    const double opt = mwcs::testing::oracle(g).objective;
    for (Mode m : {Mode::NoPre, Mode::Pre, Mode::Dc}) {
      PipelineConfig cfg;
      cfg.mode = m;
      auto r = run_pipeline(g, cfg);
      if (!near(r.solution.objective, opt, kTol) || !r.solution.optimal) {
        ++mismatches;
        if (first.empty())
          first = fmt::format(" first: {} mode {} got {} want {}", label, mode_name(m), r.solution.objective, opt);
      }
      if (!is_connected_subset(g, r.solution.nodes) ||
          !near(induced_weight(g, r.solution.nodes), r.solution.objective, 1e-7))
        ++bad_witness;
    }
  };
  for (int i = 0; i < 500; ++i) one(erdos_renyi(uniform_int(rng, 6, 16), ps[i % 3], -10, 10, rng), fmt::format("er#{}", i));
  for (int i = 0; i < 100; ++i) one(multi_block(uniform_int(rng, 10, 16), rng), fmt::format("blocks#{}", i));
  return {mismatches == 0 && bad_witness == 0,
          fmt::format("{} instances x 3 modes, {} objective mismatches, {} bad witnesses{}", instances,
                      mismatches, bad_witness, first)};
}

// 2: each rule alone preserves the optimum
Verdict rule_safety() {
  using Rule = RuleReport (*)(WeightedGraph&, ReductionTrace&);
  const std::pair<const char*, Rule> rules[] = {
      {"isolated_negative", rule_isolated_negative},
      {"merge_adjacent_positive", rule_merge_adjacent_positive},
      {"negative_chain", rule_negative_chain},
      {"mirrored_hubs", rule_mirrored_hubs},
      {"least_cost", rule_least_cost},
  };
  Rng rng(202);
  bool pass = true;
  std::string detail;
  for (auto [name, rule] : rules) {
    int failures = 0, fired = 0;
    for (int i = 0; i < 200; ++i) {
      WeightedGraph g;
      switch (i % 4) {
        case 0: g = erdos_renyi(uniform_int(rng, 6, 16), 0.3, -10, 10, rng); break;
        case 1: g = negative_chain_instance(uniform_int(rng, 6, 10), rng); break;
        case 2: g = twin_hub_instance(uniform_int(rng, 6, 10), rng); break;
        default: g = degree_two_instance(uniform_int(rng, 6, 10), rng); break;
      }
      const WeightedGraph original = g;
      const double opt = mwcs::testing::oracle(original).objective;
      ReductionTrace t(g);
      if (rule(g, t).changed()) ++fired;
      auto c = mwcs::testing::check_reduced(original, g, t);
      if (!near(c.objective, opt, kTol) || !c.witness_connected || !c.witness_weight_matches) ++failures;
    }
    pass &= failures == 0 && fired > 0;
    detail += fmt::format("{}: {} failures, fired on {}/200; ", name, failures, fired);
  }
  return {pass, detail};
}

// 3: block and separation-pair gadgets preserve the optimum
WeightedGraph pair_host(Rng& rng, std::vector<NodeId>& side) {
  // u = 0, v = 1; an outside u-v path with chords and an inside part
  // touching both u and v
  std::uniform_int_distribution<int> small(-6, 6);
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  const bool integer = rng() % 2;
  auto weight = [&] { return integer ? static_cast<double>(small(rng)) : real(rng); };
  WeightedGraph g;
  g.add_node(weight());
  g.add_node(weight());
  const int outside = uniform_int(rng, 1, 4);
  std::vector<NodeId> out_ids;
  for (int i = 0; i < outside; ++i) out_ids.push_back(g.add_node(weight()));
  g.add_edge(0, out_ids.front());
  for (int i = 0; i + 1 < outside; ++i) g.add_edge(out_ids[i], out_ids[i + 1]);
  g.add_edge(out_ids.back(), 1);
  for (int i = 0; i < outside; ++i) {
    const NodeId other = rng() % 2 ? out_ids[rng() % outside] : NodeId(rng() % 2);
    if (rng() % 3 == 0 && other != out_ids[i]) g.add_edge(out_ids[i], other);
  }
  const int inside = uniform_int(rng, 2, 6);
  std::vector<NodeId> in_ids;
  for (int i = 0; i < inside; ++i) {
    in_ids.push_back(g.add_node(weight()));
    if (i > 0) g.add_edge(in_ids[i], in_ids[rng() % i]);
  }
  for (int i = 0; i < inside; ++i)
    for (int j = i + 1; j < inside; ++j)
      if (rng() % 5 == 0) g.add_edge(in_ids[i], in_ids[j]);
  g.add_edge(0, in_ids[rng() % inside]);
  g.add_edge(1, in_ids[rng() % inside]);
  for (NodeId x : in_ids) {
    if (rng() % 4 == 0) g.add_edge(0, x);
    if (rng() % 4 == 0) g.add_edge(1, x);
  }
  if (rng() % 2) g.add_edge(0, 1);
  bool positive = false;
  for (NodeId x : in_ids) positive |= g.weight(x) > 0;
  if (!positive) g.set_weight(in_ids[rng() % inside], 1.0 + static_cast<double>(rng() % 6));
  side = {0, 1};
  side.insert(side.end(), in_ids.begin(), in_ids.end());
  return g;
}

bool biconnected(const WeightedGraph& g) {
  std::vector<NodeId> live;
  for (NodeId x : g.nodes())
    if (g.degree(x) > 0) live.push_back(x);
  if (live.size() < 3) return is_connected_subset(g, live);
  if (!is_connected_subset(g, live)) return false;
  return biconnected_components(induce(g, live).graph).blocks.size() == 1;
}

Verdict gadget_lemmas() {
  Rng rng(303);
  // block gadget on leaf blocks with a positive interior
  int block_hosts = 0, block_failures = 0;
  for (int i = 0; block_hosts < 300 && i < 5000; ++i) {
    WeightedGraph g = multi_block(uniform_int(rng, 8, 16), rng);
    auto comps = connected_components(g);
    const auto& comp = *std::max_element(comps.begin(), comps.end(),
                                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
    auto tree = block_cut_tree(g, comp);
    std::optional<std::size_t> leaf;
    for (std::size_t b = 0; b < tree.blocks.size() && !leaf; ++b) {
      if (tree.degree(b) > 1 || tree.blocks[b].size() < 2) continue;
      for (NodeId x : tree.blocks[b])
        if (g.weight(x) > 0 && (tree.degree(b) == 0 || x != tree.block_cuts[b][0])) leaf = b;
    }
    if (!leaf) continue;
    ++block_hosts;
    const WeightedGraph original = g;
    const double opt = mwcs::testing::oracle(original).objective;
    ReductionTrace t(g);
    DecomposeContext ctx;
    std::optional<NodeId> c;
    if (tree.degree(*leaf) == 1) c = tree.block_cuts[*leaf][0];
    process_bicomponent(g, t, tree.blocks[*leaf], c, ctx);
    auto check = mwcs::testing::check_reduced(original, g, t);
    if (!near(check.objective, opt, kTol) || !check.witness_connected || !check.witness_weight_matches ||
        validate_trace(g, t))
      ++block_failures;
  }

  // separation-pair gadget on u-v sides
  int pair_hosts = 0, applied = 0, pair_failures = 0, lost_biconnectivity = 0;
  DecomposeContext total;
  for (int i = 0; i < 1200; ++i) {
    std::vector<NodeId> side;
    WeightedGraph g = pair_host(rng, side);
    ++pair_hosts;
    const WeightedGraph original = g;
    const bool was_biconnected = biconnected(g);
    const double opt = mwcs::testing::oracle(original).objective;
    ReductionTrace t(g);
    DecomposeContext ctx;
    if (process_tricomponent(g, t, side, 0, 1, ctx)) ++applied;
    total.gadget_disjoint += ctx.gadget_disjoint;
    total.gadget_shared += ctx.gadget_shared;
    total.gadget_bridge += ctx.gadget_bridge;
    total.gadget_closure += ctx.gadget_closure;
    total.gadget_rejected += ctx.gadget_rejected;
    auto check = mwcs::testing::check_reduced(original, g, t);
    if (!near(check.objective, opt, kTol) || !check.witness_connected || !check.witness_weight_matches ||
        validate_trace(g, t))
      ++pair_failures;
    if (was_biconnected && !biconnected(g)) ++lost_biconnectivity;
  }
  const bool coverage = total.gadget_disjoint >= 10 && total.gadget_shared >= 10 && total.gadget_bridge >= 10 &&
                        total.gadget_closure >= 10;
  return {block_hosts >= 300 && block_failures == 0 && applied >= 300 && pair_failures == 0 &&
              lost_biconnectivity == 0 && coverage,
          fmt::format("block gadget: {} hosts, {} failures; pair gadget: {} hosts, {} applied, {} failures, "
                      "{} lost biconnectivity; branches disjoint={} shared={} bridge={} closure={} rejected={}",
                      block_hosts, block_failures, pair_hosts, applied, pair_failures, lost_biconnectivity,
                      total.gadget_disjoint, total.gadget_shared, total.gadget_bridge, total.gadget_closure,
                      total.gadget_rejected)};
}

// 4: separation routines agree on integral points; feasibility = connectivity
Verdict separation_correctness() {
  Rng rng(404);
  long points = 0, disagreements = 0, feasibility_errors = 0, unviolated = 0;
  auto flagged_integral = [](const std::vector<CutConstraint>& cuts) {
    std::set<int> s;
    for (const auto& c : cuts) s.insert(c.set.begin(), c.set.end());
    return s;
  };
  auto flagged_fractional = [](const std::vector<CutConstraint>& cuts) {
    std::set<int> s;
    for (const auto& c : cuts) s.insert(c.target);
    return s;
  };
  for (int gi = 0; gi < 50; ++gi) {
    const double p = 0.25 + 0.05 * (gi % 5);
    CompactGraph g = induce_all(erdos_renyi(8, p, -10, 10, rng)).graph;
    const int n = g.size();
    std::vector<std::vector<int>> root_sets;
    for (int r = 0; r < n; ++r) root_sets.push_back({r});
    for (int k = 0; k < 4; ++k) {
      int a = uniform_int(rng, 0, n - 1), b = uniform_int(rng, 0, n - 1);
      if (a != b) root_sets.push_back({std::min(a, b), std::max(a, b)});
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> sel;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) sel.push_back(i);
      const bool connected = is_connected_subset(g, sel);
      // unrooted: every choice of root
      for (int r = 0; r < n; ++r) {
        ++points;
        auto pt = FractionalPoint::integral(n, sel, r);
        const bool in = mask & (1u << r);
        if (check_feasible(g, pt, {}, false).feasible != (in && connected)) ++feasibility_errors;
        if (!in) continue;
        auto ci = separate_integral(g, pt);
        auto cf = separate_fractional(g, pt);
        if (flagged_integral(ci) != flagged_fractional(cf)) ++disagreements;
        for (const auto& c : ci) unviolated += !(c.violation(pt) > 0.5);
        for (const auto& c : cf) unviolated += !(c.violation(pt) > 0.5);
      }
      // rooted
      for (const auto& roots : root_sets) {
        ++points;
        auto pt = FractionalPoint::integral(n, sel, std::nullopt);
        const bool covers = std::all_of(roots.begin(), roots.end(), [&](int r) { return mask & (1u << r); });
        if (check_feasible(g, pt, roots, false).feasible != (covers && connected)) ++feasibility_errors;
        if (!covers) continue;
        auto ci = separate_integral(g, pt, roots);
        auto cf = separate_fractional(g, pt, roots);
        if (flagged_integral(ci) != flagged_fractional(cf)) ++disagreements;
        for (const auto& c : ci) unviolated += !(c.violation(pt) > 0.5);
        for (const auto& c : cf) unviolated += !(c.violation(pt) > 0.5);
      }
    }
  }
  return {disagreements == 0 && feasibility_errors == 0 && unviolated == 0,
          fmt::format("{} points on 50 graphs: {} target disagreements, {} feasibility errors, {} non-violated cuts",
                      points, disagreements, feasibility_errors, unviolated)};
}

// 5: tree DP against the oracle, and a large tree
Verdict tree_dp_check() {
  Rng rng(505);
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = uniform_int(rng, 1, 16);
    CompactGraph t = induce_all(random_tree(n, -10, 10, rng)).graph;
    auto u = tree_dp_unrooted(t);
    if (!near(u.objective, brute_force(t).objective, kTol) || !is_connected_subset(t, u.witness)) ++mismatches;
    const int r = uniform_int(rng, 0, n - 1);
    const int roots[] = {r};
    auto rr = tree_dp(t, r, roots);
    if (!near(rr.objective, brute_force(t, roots).objective, kTol) || !is_connected_subset(t, rr.witness))
      ++mismatches;
  }
  CompactGraph big = induce_all(random_tree(100000, -10, 10, rng)).graph;
  auto t0 = Clock::now();
  auto u = tree_dp_unrooted(big);
  const double unrooted_s = seconds_since(t0);
  t0 = Clock::now();
  const int roots[] = {0};
  auto rr = tree_dp(big, 0, roots);
  const double rooted_s = seconds_since(t0);
  (void)u;
  (void)rr;
  return {mismatches == 0 && unrooted_s < 1.0 && rooted_s < 1.0,
          fmt::format("500 trees, {} mismatches; n=100000: unrooted {:.3f}s, rooted {:.3f}s", mismatches,
                      unrooted_s, rooted_s)};
}

// 6: PCST optimum equals the split-graph MWCS optimum
Verdict pcst_transform() {
  Rng rng(606);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = uniform_int(rng, 2, 8);
    const int max_m = std::min(n * (n - 1) / 2, 16 - n);
    const int m = uniform_int(rng, 0, max_m);
    PcstInstance inst = random_pcst(n, m, rng);
    SplitMwcs split = pcst_to_mwcs(inst);
    auto sol = brute_force(split.graph);
    PcstTree tree = mwcs_solution_to_pcst(sol.nodes, split, inst);
    const double truth = mwcs::testing::pcst_brute_force(inst);
    bool tree_ok = tree.edges.size() + 1 == tree.nodes.size();
    if (!near(tree.profit, sol.objective, 1e-9) || !near(tree.profit, truth, 1e-9) || !tree_ok) ++mismatches;
  }
  return {mismatches == 0, fmt::format("200 instances, {} mismatches", mismatches)};
}

// 7: median node fraction after preprocessing, via the bench subcommand
Verdict preprocessing_effectiveness() {
  auto dir = scratch_dir("corpus");
  Rng rng(707);
  for (int i = 0; i < 100; ++i) {
    std::ofstream(dir / fmt::format("sparse_{:03}.stp", i))
        << write_instance(sparse_instance(200, 300, 0.2, rng), {}, Format::Stp);
  }
  const fs::path csv_path = dir / "report.csv";
  const int rc = run_cli(fmt::format("bench --modes pre --time-limit 10 {} > {}", dir.string(), csv_path.string()));
  std::istringstream csv(slurp(csv_path));
  std::string line;
  std::getline(csv, line);
  std::vector<double> fractions;
  int solved = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() < 8) continue;
    fractions.push_back(std::stod(cols[6]));
    solved += cols[7] == "optimal";
  }
  fs::remove_all(dir);
  if (rc != 0 || fractions.size() != 100) return {false, fmt::format("bench exit {}, {} rows", rc, fractions.size())};
  std::sort(fractions.begin(), fractions.end());
  const double median = 0.5 * (fractions[49] + fractions[50]);
  return {median < 0.9, fmt::format("median node fraction {:.4f} over 100 instances (min {:.4f}, max {:.4f}); "
                                    "pre mode optimal on {}/100",
                                    median, fractions.front(), fractions.back(), solved)};
}

// 8: dc mode on n = 500, m = 1000 sparse instances
Verdict performance_smoke() {
  Rng rng(808);
  int finished = 0;
  double worst = 0.0, total = 0.0;
  for (int i = 0; i < 20; ++i) {
    WeightedGraph g = sparse_instance(500, 1000, 0.1, rng);
    PipelineConfig cfg;
    cfg.mode = Mode::Dc;
    cfg.time_limit = 60.0;
    auto t0 = Clock::now();
    auto r = run_pipeline(g, cfg);
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    total += s;
    if (r.solution.optimal && s <= 60.0) ++finished;
  }
  return {finished >= 18,
          fmt::format("{}/20 solved to optimality within 60s (slowest {:.2f}s, mean {:.2f}s)", finished, worst,
                      total / 20)};
}

// 9: repeated CLI runs are byte-identical
Verdict determinism() {
  auto dir = scratch_dir("determinism");
  Rng rng(909);
  std::ofstream(dir / "a.stp") << write_instance(sparse_instance(120, 200, 0.2, rng), {}, Format::Stp);
  std::ofstream(dir / "b.stp") << write_instance(multi_block(40, rng), {}, Format::Stp);
  bool same = true;
  int runs = 0;
  for (const char* inst : {"a.stp", "b.stp"})
    for (const char* mode : {"no-pre", "pre", "dc"})
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path out = dir / fmt::format("{}_{}_{}.json", inst, mode, rep);
        const fs::path lp = dir / fmt::format("{}_{}_{}.lp", inst, mode, rep);
        run_cli(fmt::format("solve --mode {} --seed 7 --emit-ilp {} {} > {}", mode, lp.string(),
                            (dir / inst).string(), out.string()));
        if (rep == 1) {
          ++runs;
          const fs::path out0 = dir / fmt::format("{}_{}_0.json", inst, mode);
          const fs::path lp0 = dir / fmt::format("{}_{}_0.lp", inst, mode);
          const auto a = slurp(out0), b = slurp(out);
          same &= !a.empty() && a == b && slurp(lp0) == slurp(lp) && !slurp(lp).empty();
        }
      }
  fs::remove_all(dir);
  return {same, fmt::format("{} run pairs compared (solution JSON and LP file)", runs)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"rule safety", rule_safety},
      {"gadget lemmas", gadget_lemmas},
      {"separation correctness", separation_correctness},
      {"tree dp", tree_dp_check},
      {"pcst transform", pcst_transform},
      {"preprocessing effectiveness", preprocessing_effectiveness},
      {"performance smoke", performance_smoke},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  bool all = true;
  for (int i = 0; i < 9; ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all &= v.pass;
    std::cout << fmt::format("criterion {} ({}): {} [{:.1f}s] {}", i + 1, criteria[i].first,
                             v.pass ? "PASS" : "FAIL", seconds_since(t0), v.detail)
              << std::endl;
  }
  return all ? 0 : 1;
}
