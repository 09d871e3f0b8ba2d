#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwcs/graph.hpp"
#include "mwcs/transforms.hpp"

namespace mwcs {

enum class Format { Stp, Json };

/// A loaded instance. Node ids are 0..n-1 in input order; `names` holds the
/// external name of each id.
struct Instance {
  WeightedGraph graph;
  std::vector<std::string> names;
  bool numeric_names = true;  // every name is an integer
  std::vector<NodeId> roots;
};

/// Throws ParseError (with the 1-based line when known).
Instance load_instance(std::istream& in, Format format);
Instance load_instance_file(const std::string& path, Format format);
/// stp for *.stp, json otherwise.
Format format_from_path(const std::string& path);
Format parse_format(const std::string& name);

/// Serialises the live nodes of `g`, renumbered 1..k in id order. `names`,
/// when given, labels each live id in the JSON output.
std::string write_instance(const WeightedGraph& g, const std::vector<NodeId>& roots, Format format,
                           const std::vector<std::string>* names = nullptr);

/// PCST in the STP dialect: `E u v cost` edge lines, profits as terminals.
PcstInstance load_pcst_stp(std::istream& in);

struct SolutionRecord {
  std::vector<NodeId> nodes;  // original ids
  double objective = 0.0;
  bool optimal = true;
  double lower = 0.0;
  double upper = 0.0;
};

/// {"objective","nodes","status","lower","upper"} with nodes in id order.
std::string solution_json(const SolutionRecord& s, const Instance& inst);

}  // namespace mwcs
