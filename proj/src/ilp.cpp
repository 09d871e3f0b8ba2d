#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mwcs/formulation.hpp"

namespace mwcs {

namespace {

std::string xname(int v) { return "x" + std::to_string(v + 1); }
std::string yname(int v) { return "y" + std::to_string(v + 1); }

std::string number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_terms(std::ostringstream& out, const std::vector<std::pair<std::string, double>>& terms) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  int on_line = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [var, coef] = terms[i];
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    const bool negative = std::signbit(coef);
    const double mag = std::abs(coef);
    if (i == 0)
      out << (negative ? " -" : "");
    else
      out << (negative ? " -" : " +");
    if (mag != 1.0) out << ' ' << number(mag);
    out << ' ' << var;
    ++on_line;
  }
}

std::vector<std::pair<std::string, double>> neighbour_sum(const CompactGraph& g, int v, double coef) {
  std::vector<std::pair<std::string, double>> terms;
  for (int u : g.adj[v]) terms.emplace_back(xname(u), coef);
  return terms;
}

bool contains(std::span<const int> roots, int v) {
  return std::find(roots.begin(), roots.end(), v) != roots.end();
}

double value_of(const FractionalPoint& p, const std::string& var) {
  const int idx = std::stoi(var.substr(1)) - 1;
  if (var[0] == 'x') return p.x[idx];
  return p.y.empty() ? 0.0 : p.y[idx];
}

}  // namespace

std::string IlpModel::to_lp() const {
  std::ostringstream out;
  out << "Maximize\n obj:";
  write_terms(out, objective);
  out << "\nSubject To\n";
  for (const auto& row : rows) {
    out << ' ' << row.name << ':';
    write_terms(out, row.terms);
    out << ' ' << (row.sense == '<' ? "<=" : row.sense == '>' ? ">=" : "=") << ' '
        << number(row.rhs) << '\n';
  }
  out << "Binary\n";
  for (std::size_t i = 0; i < binaries.size(); ++i)
    out << (i % 10 == 0 ? (i ? "\n " : " ") : " ") << binaries[i];
  if (!binaries.empty()) out << '\n';
  out << "End\n";
  return out.str();
}

IlpModel emit_ilp(const CompactGraph& g, std::span<const int> roots, bool strengthen) {
  const int n = g.size();
  IlpModel m;
  for (int v = 0; v < n; ++v) m.objective.emplace_back(xname(v), g.weight[v]);
  for (int v = 0; v < n; ++v) m.binaries.push_back(xname(v));

  if (roots.empty()) {
    for (int v = 0; v < n; ++v) m.binaries.push_back(yname(v));

    LinearRow sum{"one_root", {}, '=', 1.0};
    for (int v = 0; v < n; ++v) sum.terms.emplace_back(yname(v), 1.0);
    m.rows.push_back(std::move(sum));
    for (int v = 0; v < n; ++v)
      m.rows.push_back({"root_in_" + std::to_string(v + 1), {{yname(v), 1.0}, {xname(v), -1.0}}, '<', 0.0});
    for (int v = 0; v < n; ++v) {
      LinearRow r{"single_cut_" + std::to_string(v + 1), {{xname(v), 1.0}, {yname(v), -1.0}}, '<', 0.0};
      auto rest = neighbour_sum(g, v, -1.0);
      r.terms.insert(r.terms.end(), rest.begin(), rest.end());
      m.rows.push_back(std::move(r));
    }
    if (!strengthen) return m;

    for (int v = 0; v < n; ++v)
      if (g.weight[v] < 0)
        m.rows.push_back({"neg_root_" + std::to_string(v + 1), {{yname(v), 1.0}}, '=', 0.0});
    for (int u = 0; u < n; ++u) {
      if (!(g.weight[u] > 0)) continue;
      LinearRow r{"symmetry_" + std::to_string(u + 1), {}, '<', 1.0};
      for (int v = u + 1; v < n; ++v) r.terms.emplace_back(yname(v), 1.0);
      r.terms.emplace_back(xname(u), 1.0);
      m.rows.push_back(std::move(r));
    }
  } else {
    for (int r : roots) m.rows.push_back({"root_" + std::to_string(r + 1), {{xname(r), 1.0}}, '=', 1.0});
    for (int v = 0; v < n; ++v) {
      if (contains(roots, v)) continue;
      LinearRow r{"single_cut_" + std::to_string(v + 1), {{xname(v), 1.0}}, '<', 0.0};
      auto rest = neighbour_sum(g, v, -1.0);
      r.terms.insert(r.terms.end(), rest.begin(), rest.end());
      m.rows.push_back(std::move(r));
    }
    if (!strengthen) return m;
  }

  for (int v = 0; v < n; ++v) {
    if (!(g.weight[v] < 0)) continue;
    for (int u : g.adj[v])
      if (g.weight[u] > 0)
        m.rows.push_back({"neg_" + std::to_string(v + 1) + "_" + std::to_string(u + 1),
                          {{xname(v), 1.0}, {xname(u), -1.0}},
                          '<',
                          0.0});
  }
  if (roots.empty()) {
    for (int v = 0; v < n; ++v) {
      if (!(g.weight[v] < 0)) continue;
      LinearRow r{"pass_through_" + std::to_string(v + 1), {{xname(v), 2.0}}, '<', 0.0};
      auto rest = neighbour_sum(g, v, -1.0);
      r.terms.insert(r.terms.end(), rest.begin(), rest.end());
      m.rows.push_back(std::move(r));
    }
  }
  return m;
}

FeasibilityReport check_feasible(const CompactGraph& g, const FractionalPoint& p,
                                 std::span<const int> roots, bool strengthen) {
  FeasibilityReport report;
  constexpr double tol = 1e-9;
  IlpModel m = emit_ilp(g, roots, strengthen);
  for (const auto& row : m.rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * value_of(p, var);
    bool ok = row.sense == '<'   ? lhs <= row.rhs + tol
              : row.sense == '>' ? lhs >= row.rhs - tol
                                 : std::abs(lhs - row.rhs) <= tol;
    if (!ok) report.violations.push_back(row.name);
  }

  bool can_separate = true;
  if (roots.empty()) {
    int count = 0;
    for (double y : p.y) count += y > 0.5;
    can_separate = count == 1;
  }
  if (can_separate) {
    for (const auto& cut : separate_integral(g, p, roots))
      report.violations.push_back("cut_" + std::to_string(cut.target + 1) +
                                  (cut.root ? "_root_" + std::to_string(*cut.root + 1) : ""));
  }
  report.feasible = report.violations.empty();
  return report;
}

}  // namespace mwcs
