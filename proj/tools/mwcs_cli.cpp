// mwcs: command-line front end.
//
//   mwcs solve [--mode no-pre|pre|dc] [--rooted a,b] [--time-limit s] [--allow-empty]
//              [--format stp|json] [--emit-ilp path] [--seed n] instance
//   mwcs oracle [--rooted a,b] [--allow-empty] [--format f] instance
//   mwcs preprocess [--out path] [--out-format f] instance
//   mwcs decompose instance
//   mwcs bench [--modes a,b] [--time-limit s] corpus-dir
//   mwcs generate --kind sparse|er|tree|blocks --count k --out-dir dir ...
//
// Exit codes: 0 ok, 1 usage or internal error, 2 parse error, 3 infeasible,
// 4 size-limit refusal.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "mwcs/bench.hpp"
#include "mwcs/errors.hpp"
#include "mwcs/formulation.hpp"
#include "mwcs/generators.hpp"
#include "mwcs/io.hpp"
#include "mwcs/oracle.hpp"
#include "mwcs/pipeline.hpp"

namespace {

using namespace mwcs;
using json = nlohmann::ordered_json;

struct InputArgs {
  std::string path;
  std::string format;
  std::string rooted;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("instance", in.path, "instance file")->required();
  cmd->add_option("--format", in.format, "stp or json (default: by extension)");
}

Instance load(const InputArgs& in) {
  Format f = in.format.empty() ? format_from_path(in.path) : parse_format(in.format);
  return load_instance_file(in.path, f);
}

/// --rooted overrides the roots stored in the file.
std::vector<NodeId> roots_of(const Instance& inst, const std::string& spec) {
  if (spec.empty()) return inst.roots;
  std::map<std::string, NodeId> by_name;
  for (NodeId v = 0; v < inst.names.size(); ++v) by_name[inst.names[v]] = v;
  std::vector<NodeId> roots;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto it = by_name.find(item);
    if (it == by_name.end()) throw PreconditionError("unknown root '" + item + "'");
    roots.push_back(it->second);
  }
  return roots;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << text;
}

json rule_json(const std::vector<RuleReport>& rules) {
  json arr = json::array();
  for (const auto& r : rules)
    arr.push_back({{"rule", r.rule},
                   {"applications", r.applications},
                   {"nodes_removed", r.nodes_removed},
                   {"nodes_merged", r.nodes_merged},
                   {"elapsed", r.elapsed}});
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact maximum-weight connected subgraph solver"};
  app.require_subcommand(1);

  InputArgs solve_in;
  std::string mode = "dc", ilp_path;
  double time_limit = std::numeric_limits<double>::infinity();
  bool allow_empty = false, plain_ilp = false, cut_lp = false;
  std::uint64_t seed = 0;
  auto* solve = app.add_subcommand("solve", "solve an instance exactly");
  add_input(solve, solve_in);
  solve->add_option("--mode", mode, "no-pre, pre or dc")->check(CLI::IsMember({"no-pre", "pre", "dc"}));
  solve->add_option("--rooted", solve_in.rooted, "comma-separated root node names");
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_flag("--allow-empty", allow_empty, "report the empty set when every solution is negative");
  solve->add_option("--emit-ilp", ilp_path, "write the node-separator model of the input to this path");
  solve->add_flag("--plain-ilp", plain_ilp, "omit the strengthening rows from --emit-ilp");
  solve->add_flag("--cut-lp", cut_lp, "add the directed-cut LP bound to the branch and bound");
  solve->add_option("--seed", seed, "seed (the solve path is deterministic and does not draw from it)");

  InputArgs oracle_in;
  bool oracle_allow_empty = false;
  auto* oracle = app.add_subcommand("oracle", "brute-force optimum (at most 25 nodes)");
  add_input(oracle, oracle_in);
  oracle->add_option("--rooted", oracle_in.rooted, "comma-separated root node names");
  oracle->add_flag("--allow-empty", oracle_allow_empty, "report the empty set when every solution is negative");

  InputArgs pre_in;
  std::string pre_out, pre_out_format = "stp";
  auto* pre = app.add_subcommand("preprocess", "apply the reduction rules");
  add_input(pre, pre_in);
  pre->add_option("--out", pre_out, "write the reduced instance here");
  pre->add_option("--out-format", pre_out_format, "stp or json")->check(CLI::IsMember({"stp", "json"}));

  InputArgs dec_in;
  double dec_time_limit = std::numeric_limits<double>::infinity();
  auto* dec = app.add_subcommand("decompose", "divide-and-conquer report");
  add_input(dec, dec_in);
  dec->add_option("--time-limit", dec_time_limit, "seconds");

  std::string corpus, modes = "no-pre,pre,dc";
  double bench_limit = 60.0;
  auto* bench = app.add_subcommand("bench", "CSV report over a corpus directory");
  bench->add_option("corpus", corpus, "directory of .stp / .json instances")->required();
  bench->add_option("--modes", modes, "comma-separated modes");
  bench->add_option("--time-limit", bench_limit, "seconds per instance and mode");

  std::string kind = "sparse", out_dir;
  int count = 10, n = 200, m = 300;
  double positive = 0.2, p = 0.3;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "write a random corpus in STP format");
  gen->add_option("--kind", kind)->check(CLI::IsMember({"sparse", "er", "tree", "blocks"}));
  gen->add_option("--count", count);
  gen->add_option("--n", n);
  gen->add_option("--m", m, "edges (sparse)");
  gen->add_option("--positive", positive, "fraction of positive nodes (sparse)");
  gen->add_option("--p", p, "edge probability (er)");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out-dir", out_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      Instance inst = load(solve_in);
      PipelineConfig cfg;
      cfg.mode = parse_mode(mode);
      cfg.roots = roots_of(inst, solve_in.rooted);
      cfg.time_limit = time_limit;
      cfg.allow_empty = allow_empty;
      cfg.seed = seed;
      cfg.cut_lp = cut_lp;
      if (!ilp_path.empty()) {
        InducedGraph ig = induce_all(inst.graph);
        std::vector<int> local;
        for (NodeId r : cfg.roots) local.push_back(ig.local(r));
        write_file(ilp_path, emit_ilp(ig.graph, local, !plain_ilp).to_lp());
      }
      PipelineResult res = run_pipeline(inst.graph, cfg);
      std::cout << solution_json(res.solution, inst);
    } else if (*oracle) {
      Instance inst = load(oracle_in);
      InducedGraph ig = induce_all(inst.graph);
      std::vector<int> local;
      for (NodeId r : roots_of(inst, oracle_in.rooted)) local.push_back(ig.local(r));
      SubgraphSolution s = brute_force(ig.graph, local, oracle_allow_empty);
      SolutionRecord rec;
      rec.nodes = ig.to_ids(s.nodes);
      rec.objective = rec.lower = rec.upper = s.objective;
      std::cout << solution_json(rec, inst);
    } else if (*pre) {
      Instance inst = load(pre_in);
      WeightedGraph g = inst.graph;
      ReductionTrace t(g);
      auto rules = preprocess(g, t);
      if (!pre_out.empty()) {
        std::vector<NodeId> roots;
        write_file(pre_out, write_instance(g, roots, parse_format(pre_out_format)));
      }
      json doc;
      doc["nodes_before"] = inst.graph.node_count();
      doc["edges_before"] = inst.graph.edge_count();
      doc["nodes_after"] = g.node_count();
      doc["edges_after"] = g.edge_count();
      doc["rules"] = rule_json(rules);
      std::cout << doc.dump(2) << '\n';
    } else if (*dec) {
      Instance inst = load(dec_in);
      PipelineConfig cfg;
      cfg.mode = Mode::Dc;
      cfg.time_limit = dec_time_limit;
      PipelineResult res = run_pipeline(inst.graph, cfg);
      json doc;
      doc["objective"] = res.solution.objective;
      doc["status"] = res.solution.optimal ? "optimal" : "gap";
      doc["blocks"] = res.stats.blocks;
      doc["positive_tricomponents"] = res.stats.positive_tricomponents;
      doc["negative_tricomponents"] = res.stats.negative_tricomponents;
      doc["components"] = json::array();
      for (const auto& c : res.stats.components)
        doc["components"].push_back({{"nodes", c.nodes},
                                     {"edges", c.edges},
                                     {"blocks", c.blocks},
                                     {"positive_tricomponents", c.positive_tricomponents},
                                     {"negative_tricomponents", c.negative_tricomponents}});
      std::cout << doc.dump(2) << '\n';
    } else if (*bench) {
      BenchOptions opt;
      opt.modes.clear();
      std::stringstream ss(modes);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) opt.modes.push_back(parse_mode(item));
      opt.time_limit = bench_limit;
      std::cout << bench_csv(run_bench(corpus_files(corpus), opt), opt);
    } else if (*gen) {
      std::filesystem::create_directories(out_dir);
      Rng rng(gen_seed);
      for (int i = 0; i < count; ++i) {
        WeightedGraph g;
        if (kind == "sparse")
          g = sparse_instance(n, m, positive, rng);
        else if (kind == "er")
          g = erdos_renyi(n, p, -10, 10, rng);
        else if (kind == "tree")
          g = random_tree(n, -10, 10, rng);
        else
          g = multi_block(n, rng);
        char name[64];
        std::snprintf(name, sizeof name, "%s_%04d.stp", kind.c_str(), i);
        write_file((std::filesystem::path(out_dir) / name).string(), write_instance(g, {}, Format::Stp));
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const SizeLimitError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
