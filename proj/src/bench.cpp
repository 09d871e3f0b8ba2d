#include "mwcs/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "mwcs/errors.hpp"

namespace mwcs {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

BenchRow bench_one(const std::string& path, const BenchOptions& opt) {
  BenchRow row;
  row.instance = std::filesystem::path(path).filename().string();
  try {
    Instance inst = load_instance_file(path, format_from_path(path));
    row.nodes_before = inst.graph.node_count();
    row.edges_before = inst.graph.edge_count();
    WeightedGraph reduced = inst.graph;
    ReductionTrace trace(reduced);
    preprocess(reduced, trace);
    row.nodes_after = reduced.node_count();
    row.edges_after = reduced.edge_count();
    row.components_after = connected_components(reduced).size();
    row.node_fraction =
        row.nodes_before ? static_cast<double>(row.nodes_after) / static_cast<double>(row.nodes_before) : 1.0;
    for (Mode m : opt.modes) {
      PipelineConfig cfg;
      cfg.mode = m;
      cfg.roots = inst.roots;
      cfg.time_limit = opt.time_limit;
      row.modes.push_back(m);
      row.results.push_back(run_pipeline(inst.graph, cfg));
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<std::string> corpus_files(const std::string& dir) {
  std::vector<std::string> files;
  if (!std::filesystem::is_directory(dir)) throw PreconditionError("'" + dir + "' is not a directory");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".stp" || ext == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<BenchRow> run_bench(const std::vector<std::string>& files, const BenchOptions& opt) {
  std::vector<BenchRow> rows(files.size());
  const long count = static_cast<long>(files.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) rows[i] = bench_one(files[i], opt);
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, const BenchOptions& opt) {
  std::ostringstream out;
  out << "instance,nodes_before,edges_before,nodes_after,edges_after,components_after,node_fraction";
  for (Mode m : opt.modes) {
    const std::string p = mode_name(m);
    out << ',' << p << "_status," << p << "_lower," << p << "_upper," << p << "_seconds";
  }
  out << ",blocks,positive_tricomponents,negative_tricomponents,error\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.nodes_before << ',' << r.edges_before << ',' << r.nodes_after << ','
        << r.edges_after << ',' << r.components_after << ',' << num(r.node_fraction);
    std::size_t blocks = 0, pos = 0, neg = 0;
    for (Mode m : opt.modes) {
      auto it = std::find(r.modes.begin(), r.modes.end(), m);
      if (it == r.modes.end()) {
        out << ",,,,";
        continue;
      }
      const auto& res = r.results[it - r.modes.begin()];
      out << ',' << (res.solution.optimal ? "optimal" : "gap") << ',' << num(res.solution.lower) << ','
          << num(res.solution.upper) << ',' << num(res.stats.seconds);
      if (m == Mode::Dc) {
        blocks = res.stats.blocks;
        pos = res.stats.positive_tricomponents;
        neg = res.stats.negative_tricomponents;
      }
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << ',' << blocks << ',' << pos << ',' << neg << ',' << err << '\n';
  }
  return out.str();
}

}  // namespace mwcs
