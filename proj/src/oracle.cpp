#include <bit>
#include <cstdint>
#include <limits>

#include "mwcs/errors.hpp"
#include "mwcs/oracle.hpp"

namespace mwcs {

namespace {

using Mask = std::uint32_t;

struct Best {
  bool found = false;
  double value = -std::numeric_limits<double>::infinity();
  Mask mask = 0;
};

std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

bool better(double value, Mask mask, const Best& b) {
  if (!b.found || value > b.value) return true;
  if (value < b.value) return false;
  return members(mask) < members(b.mask);
}

void consider(Best& b, double value, Mask mask) {
  if (better(value, mask, b)) {
    b.found = true;
    b.value = value;
    b.mask = mask;
  }
}

struct Prepared {
  int n = 0;
  std::vector<Mask> adj;
  Mask roots = 0;
};

Prepared prepare(const CompactGraph& g, std::span<const int> roots, int limit) {
  if (g.size() > limit)
    throw SizeLimitError("oracle refuses " + std::to_string(g.size()) + " nodes (limit " +
                         std::to_string(limit) + ")");
  Prepared p;
  p.n = g.size();
  p.adj.assign(p.n, 0);
  for (int v = 0; v < p.n; ++v)
    for (int u : g.adj[v]) p.adj[v] |= Mask{1} << u;
  for (int r : roots) {
    if (r < 0 || r >= p.n) throw PreconditionError("root index out of range");
    p.roots |= Mask{1} << r;
  }
  return p;
}

bool connected(const Prepared& p, Mask m) {
  if (m == 0) return true;
  Mask reach = m & (~m + 1);
  Mask frontier = reach;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= p.adj[std::countr_zero(f)];
    next &= m & ~reach;
    reach |= next;
    frontier = next;
  }
  return reach == m;
}

double mask_weight(const CompactGraph& g, Mask m) {
  double w = 0.0;
  for (; m; m &= m - 1) w += g.weight[std::countr_zero(m)];
  return w;
}

SubgraphSolution finish(const CompactGraph& g, const Best& b, bool allow_empty) {
  if (!b.found && g.size() > 0) throw InfeasibleError("no connected set contains all roots");
  SubgraphSolution s;
  s.optimal = true;
  if (b.found && !(allow_empty && b.value < 0)) {
    s.nodes = members(b.mask);
    s.objective = b.value;
  }
  s.upper = s.objective;
  return s;
}

void scan_range(const CompactGraph& g, const Prepared& p, std::uint64_t lo, std::uint64_t hi, Best& b) {
  for (std::uint64_t i = lo; i < hi; ++i) {
    const Mask m = static_cast<Mask>(i);
    if ((m & p.roots) != p.roots || !connected(p, m)) continue;
    consider(b, mask_weight(g, m), m);
  }
}

}  // namespace

SubgraphSolution brute_force_subsets_serial(const CompactGraph& g, std::span<const int> roots,
                                            bool allow_empty) {
  Prepared p = prepare(g, roots, kSubsetEnumerationLimit);
  Best b;
  scan_range(g, p, 1, std::uint64_t{1} << p.n, b);
  return finish(g, b, allow_empty);
}

SubgraphSolution brute_force_subsets(const CompactGraph& g, std::span<const int> roots,
                                     bool allow_empty) {
  Prepared p = prepare(g, roots, kSubsetEnumerationLimit);
  const std::uint64_t total = std::uint64_t{1} << p.n;
  const long chunks = 64;
  std::vector<Best> partial(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < chunks; ++c) {
    const std::uint64_t lo = std::max<std::uint64_t>(1, total * c / chunks);
    const std::uint64_t hi = total * (c + 1) / chunks;
    scan_range(g, p, lo, hi, partial[c]);
  }
  Best b;
  for (const auto& part : partial)
    if (part.found) consider(b, part.value, part.mask);
  return finish(g, b, allow_empty);
}

SubgraphSolution brute_force_grow(const CompactGraph& g, std::span<const int> roots, bool allow_empty) {
  Prepared p = prepare(g, roots, kOracleNodeLimit);
  Best b;
  // ESU-style extension: every connected set is produced once, from its
  // smallest member `seed`.
  auto extend = [&](auto&& self, Mask sub, Mask neighbourhood, Mask ext, int seed) -> void {
    if ((sub & p.roots) == p.roots) consider(b, mask_weight(g, sub), sub);
    while (ext) {
      const int w = std::countr_zero(ext);
      ext &= ext - 1;
      const Mask above = ~((Mask{2} << seed) - 1);
      Mask fresh = p.adj[w] & ~sub & ~neighbourhood & above;
      self(self, sub | (Mask{1} << w), neighbourhood | p.adj[w], ext | fresh, seed);
    }
  };
  for (int v = 0; v < p.n; ++v) {
    if (p.roots && std::countr_zero(p.roots) < v) break;
    const Mask above = ~((Mask{2} << v) - 1);
    const Mask self_bit = Mask{1} << v;
    extend(extend, self_bit, p.adj[v] | self_bit, p.adj[v] & above, v);
  }
  return finish(g, b, allow_empty);
}

SubgraphSolution brute_force(const CompactGraph& g, std::span<const int> roots, bool allow_empty) {
  if (g.size() <= kSubsetEnumerationLimit && g.size() > 16) return brute_force_subsets(g, roots, allow_empty);
  return brute_force_grow(g, roots, allow_empty);
}

}  // namespace mwcs
