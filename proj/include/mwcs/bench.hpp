#pragma once

#include <string>
#include <vector>

#include "mwcs/pipeline.hpp"

namespace mwcs {

struct BenchOptions {
  std::vector<Mode> modes{Mode::NoPre, Mode::Pre, Mode::Dc};
  double time_limit = 60.0;  // per instance and mode
};

struct BenchRow {
  std::string instance;
  std::size_t nodes_before = 0, edges_before = 0;
  std::size_t nodes_after = 0, edges_after = 0, components_after = 0;
  double node_fraction = 1.0;  // nodes_after / nodes_before
  std::vector<Mode> modes;
  std::vector<PipelineResult> results;  // per mode
  std::string error;                    // parse or solve failure
};

/// Instance files (*.stp, *.json) directly inside `dir`, sorted by name.
std::vector<std::string> corpus_files(const std::string& dir);

/// Runs every file through every mode; instances are spread over threads.
std::vector<BenchRow> run_bench(const std::vector<std::string>& files, const BenchOptions& opt);

/// CSV with a header line; one row per instance in input order.
std::string bench_csv(const std::vector<BenchRow>& rows, const BenchOptions& opt);

}  // namespace mwcs
