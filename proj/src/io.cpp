#include "mwcs/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "mwcs/errors.hpp"

namespace mwcs {

namespace {

using json = nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long parse_int(const std::string& s, std::size_t line) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

double parse_real(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + s + "'");
  }
}

struct StpData {
  long nodes = -1;
  std::vector<std::pair<long, long>> edges;
  std::vector<double> costs;
  std::vector<std::pair<long, double>> terminals;
  std::vector<long> roots;
};

StpData read_stp(std::istream& in) {
  StpData d;
  std::string raw;
  std::size_t line_no = 0;
  std::string section;
  long declared_edges = -1;
  long declared_terminals = -1;
  bool seen_eof = false;
  auto node_index = [&](const std::string& tok, std::size_t line) {
    long v = parse_int(tok, line);
    if (d.nodes < 0) throw ParseError(line, "node referenced before 'Nodes'");
    if (v < 1 || v > d.nodes) throw ParseError(line, "node " + tok + " out of range 1.." + std::to_string(d.nodes));
    return v;
  };
  auto need = [&](const std::vector<std::string>& t, std::size_t n, std::size_t line) {
    if (t.size() < n) throw ParseError(line, "too few fields in '" + t[0] + "' line");
  };

  while (std::getline(in, raw)) {
    ++line_no;
    auto t = tokens(raw);
    if (t.empty()) continue;
    if (seen_eof) throw ParseError(line_no, "content after EOF");
    const std::string key = lower(t[0]);
    if (section.empty()) {
      if (key == "section") {
        need(t, 2, line_no);
        section = lower(t[1]);
      } else if (key == "eof") {
        seen_eof = true;
      } else if (line_no == 1) {
        continue;  // magic header line
      } else {
        throw ParseError(line_no, "unexpected '" + t[0] + "' outside a section");
      }
      continue;
    }
    if (key == "end") {
      if (section == "graph" && declared_edges >= 0 && declared_edges != static_cast<long>(d.edges.size()))
        throw ParseError(line_no, "declared " + std::to_string(declared_edges) + " edges, found " +
                                      std::to_string(d.edges.size()));
      if (section == "terminals" && declared_terminals >= 0 &&
          declared_terminals != static_cast<long>(d.terminals.size()))
        throw ParseError(line_no, "declared " + std::to_string(declared_terminals) + " terminals, found " +
                                      std::to_string(d.terminals.size()));
      section.clear();
      continue;
    }
    if (section == "graph") {
      if (key == "nodes") {
        need(t, 2, line_no);
        d.nodes = parse_int(t[1], line_no);
        if (d.nodes < 0) throw ParseError(line_no, "negative node count");
      } else if (key == "edges" || key == "arcs") {
        need(t, 2, line_no);
        declared_edges = parse_int(t[1], line_no);
      } else if (key == "e" || key == "a") {
        need(t, 3, line_no);
        long a = node_index(t[1], line_no);
        long b = node_index(t[2], line_no);
        if (a == b) throw ParseError(line_no, "self-loop on node " + t[1]);
        d.edges.emplace_back(a, b);
        d.costs.push_back(t.size() >= 4 ? parse_real(t[3], line_no) : 0.0);
      } else {
        throw ParseError(line_no, "unknown keyword '" + t[0] + "' in Graph section");
      }
    } else if (section == "terminals") {
      if (key == "terminals") {
        need(t, 2, line_no);
        declared_terminals = parse_int(t[1], line_no);
      } else if (key == "t" || key == "tp") {
        need(t, 3, line_no);
        long v = node_index(t[1], line_no);
        d.terminals.emplace_back(v, parse_real(t[2], line_no));
      } else if (key == "root") {
        need(t, 2, line_no);
        d.roots.push_back(node_index(t[1], line_no));
      } else {
        throw ParseError(line_no, "unknown keyword '" + t[0] + "' in Terminals section");
      }
    } else if (section == "roots") {
      if (key == "r" || key == "root") {
        need(t, 2, line_no);
        d.roots.push_back(node_index(t[1], line_no));
      } else if (key != "roots") {
        throw ParseError(line_no, "unknown keyword '" + t[0] + "' in Roots section");
      }
    }
    // other sections (Comment, Coordinates, ...) are skipped
  }
  if (!section.empty()) throw ParseError(line_no, "section '" + section + "' not closed by END");
  if (d.nodes < 0) throw ParseError(0, "missing 'Nodes' declaration");
  return d;
}

Instance load_stp(std::istream& in) {
  StpData d = read_stp(in);
  Instance inst;
  std::vector<double> weight(d.nodes, 0.0);
  for (auto [v, w] : d.terminals) weight[v - 1] = w;
  for (long v = 0; v < d.nodes; ++v) {
    inst.graph.add_node(weight[v]);
    inst.names.push_back(std::to_string(v + 1));
  }
  for (auto [a, b] : d.edges) inst.graph.add_edge(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
  for (long r : d.roots) inst.roots.push_back(static_cast<NodeId>(r - 1));
  return inst;
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string name_of(const json& id) {
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  if (id.is_string()) return id.get<std::string>();
  throw ParseError(0, "node id must be an integer or a string");
}

Instance load_json(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
    throw ParseError(0, "expected an object with a 'nodes' array");

  Instance inst;
  std::map<std::string, NodeId> index;
  for (const auto& node : doc["nodes"]) {
    if (!node.is_object() || !node.contains("id")) throw ParseError(0, "node entry without 'id'");
    const std::string name = name_of(node["id"]);
    if (!node["id"].is_number_integer()) inst.numeric_names = false;
    double w = 0.0;
    if (node.contains("weight")) {
      if (!node["weight"].is_number()) throw ParseError(0, "weight of node '" + name + "' is not a number");
      w = node["weight"].get<double>();
    }
    if (index.count(name)) throw ParseError(0, "duplicate node id '" + name + "'");
    index[name] = inst.graph.add_node(w);
    inst.names.push_back(name);
  }
  auto lookup = [&](const json& id) {
    const std::string name = name_of(id);
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(0, "unknown node id '" + name + "'");
    return it->second;
  };
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError(0, "'edges' must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError(0, "edge must be a pair of ids");
      NodeId a = lookup(e[0]);
      NodeId b = lookup(e[1]);
      if (a == b) throw ParseError(0, "self-loop on node '" + inst.names[a] + "'");
      inst.graph.add_edge(a, b);
    }
  }
  if (doc.contains("roots")) {
    if (!doc["roots"].is_array()) throw ParseError(0, "'roots' must be an array");
    for (const auto& r : doc["roots"]) inst.roots.push_back(lookup(r));
  }
  return inst;
}

json name_value(const std::string& name, bool numeric) {
  if (numeric) return std::stoll(name);
  return name;
}

json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

Instance load_instance(std::istream& in, Format format) {
  return format == Format::Stp ? load_stp(in) : load_json(in);
}

Instance load_instance_file(const std::string& path, Format format) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return load_instance(in, format);
}

Format format_from_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos && lower(path.substr(dot)) == ".stp") return Format::Stp;
  return Format::Json;
}

Format parse_format(const std::string& name) {
  const std::string n = lower(name);
  if (n == "stp") return Format::Stp;
  if (n == "json") return Format::Json;
  throw PreconditionError("unknown format '" + name + "'");
}

std::string write_instance(const WeightedGraph& g, const std::vector<NodeId>& roots, Format format,
                           const std::vector<std::string>* names) {
  const auto nodes = g.nodes();
  std::map<NodeId, std::size_t> number;
  for (std::size_t i = 0; i < nodes.size(); ++i) number[nodes[i]] = i + 1;
  const auto edges = g.edges();

  if (format == Format::Stp) {
    std::ostringstream out;
    out.precision(17);
    out << "SECTION Graph\nNodes " << nodes.size() << "\nEdges " << edges.size() << '\n';
    for (auto [a, b] : edges) out << "E " << number[a] << ' ' << number[b] << '\n';
    out << "END\n\nSECTION Terminals\nTerminals " << nodes.size() << '\n';
    for (NodeId v : nodes) out << "T " << number[v] << ' ' << g.weight(v) << '\n';
    out << "END\n";
    if (!roots.empty()) {
      out << "\nSECTION Roots\n";
      for (NodeId r : roots) out << "R " << number[r] << '\n';
      out << "END\n";
    }
    out << "\nEOF\n";
    return out.str();
  }

  json doc;
  doc["nodes"] = json::array();
  for (NodeId v : nodes) {
    json node;
    node["id"] = number[v];
    node["weight"] = g.weight(v);
    if (names) node["name"] = (*names)[v];
    doc["nodes"].push_back(node);
  }
  doc["edges"] = json::array();
  for (auto [a, b] : edges) doc["edges"].push_back({number[a], number[b]});
  if (!roots.empty()) {
    doc["roots"] = json::array();
    for (NodeId r : roots) doc["roots"].push_back(number[r]);
  }
  return doc.dump(2) + "\n";
}

PcstInstance load_pcst_stp(std::istream& in) {
  StpData d = read_stp(in);
  PcstInstance p;
  p.profit.assign(d.nodes, 0.0);
  for (auto [v, w] : d.terminals) {
    if (w < 0) throw ParseError(0, "negative profit");
    p.profit[v - 1] = w;
  }
  std::map<std::pair<long, long>, std::size_t> seen;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    auto [a, b] = d.edges[e];
    if (a > b) std::swap(a, b);
    if (d.costs[e] < 0) throw ParseError(0, "negative edge cost");
    auto it = seen.find({a, b});
    if (it != seen.end()) {
      p.cost[it->second] = std::min(p.cost[it->second], d.costs[e]);
      continue;
    }
    seen[{a, b}] = p.edges.size();
    p.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    p.cost.push_back(d.costs[e]);
  }
  return p;
}

std::string solution_json(const SolutionRecord& s, const Instance& inst) {
  std::vector<NodeId> nodes = s.nodes;
  std::sort(nodes.begin(), nodes.end());
  json doc;
  doc["objective"] = real(s.objective);
  doc["nodes"] = json::array();
  for (NodeId v : nodes) doc["nodes"].push_back(name_value(inst.names[v], inst.numeric_names));
  doc["status"] = s.optimal ? "optimal" : "gap";
  doc["lower"] = real(s.lower);
  doc["upper"] = real(s.upper);
  return doc.dump(2) + "\n";
}

}  // namespace mwcs
