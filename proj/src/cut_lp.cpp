#include "mwcs/cut_lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mwcs/maxflow.hpp"
#include "mwcs/solver.hpp"

namespace mwcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kCutTol = 1e-6;
constexpr int kRefactorEvery = 50;
constexpr int kMaxRounds = 40;
constexpr int kNestedCuts = 10;
constexpr std::size_t kMaxPivots = 20000;

/// Dual simplex on  min c.x  s.t.  sum_{a in row i} x_a - s_i = 1,  x, s >= 0,
/// with an explicit dense basis inverse. Columns 0..A-1 are arcs, A+i is the
/// surplus of row i. Every iterate is dual feasible.
class DualSimplex {
 public:
  DualSimplex(const std::vector<double>& cost, const std::vector<char>& alive)
      : cost_(cost), alive_(alive), col_rows_(cost.size()), basic_(cost.size(), 0) {}

  int rows() const { return static_cast<int>(row_arcs_.size()); }
  const std::vector<int>& row(int i) const { return row_arcs_[i]; }

  void add_row(std::vector<int> arcs) {
    const int m = rows();
    const int A = arcs_count();
    std::vector<char> in_row(A, 0);
    for (int a : arcs) in_row[a] = 1;
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(m + 1, m + 1);
    next.topLeftCorner(m, m) = binv_;
    for (int k = 0; k < m; ++k)
      if (basis_[k] < A && in_row[basis_[k]]) next.row(m).head(m) += binv_.row(k);
    next(m, m) = -1.0;
    binv_ = std::move(next);
    for (int a : arcs) col_rows_[a].push_back(m);
    row_arcs_.push_back(std::move(arcs));
    basis_.push_back(A + m);
  }

  /// Drops rows whose surplus is basic with a positive value. Returns the
  /// kept rows' old indices.
  std::vector<int> drop_slack_rows() {
    const int m = rows();
    const int A = arcs_count();
    Eigen::VectorXd xb = primal();
    std::vector<char> drop(m, 0);
    for (int k = 0; k < m; ++k)
      if (basis_[k] >= A && xb[k] > 1e-7) drop[basis_[k] - A] = 1;
    std::vector<int> kept, remap(m, -1);
    for (int i = 0; i < m; ++i)
      if (!drop[i]) {
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(i);
      }
    if (kept.size() == static_cast<std::size_t>(m)) return kept;
    std::vector<std::vector<int>> kept_rows;
    for (int i : kept) kept_rows.push_back(std::move(row_arcs_[i]));
    row_arcs_ = std::move(kept_rows);
    std::vector<int> basis;
    for (int col : basis_) {
      if (col < A) basis.push_back(col);
      else if (!drop[col - A]) basis.push_back(A + remap[col - A]);
    }
    basis_ = std::move(basis);
    for (auto& cr : col_rows_) cr.clear();
    for (int i = 0; i < rows(); ++i)
      for (int a : row_arcs_[i]) col_rows_[a].push_back(i);
    refactor();
    return kept;
  }

  enum class Status { Optimal, Unbounded, Stopped, Trouble };

  /// Pivots until optimal, until the objective reaches `stop_objective`, or
  /// until `pivot_budget` runs out.
  Status run(double stop_objective, std::size_t& pivot_budget) {
    const int A = arcs_count();
    std::fill(basic_.begin(), basic_.end(), 0);
    for (int col : basis_)
      if (col < A) basic_[col] = 1;
    int retries = 0;
    while (true) {
      const int m = rows();
      if (m == 0) return Status::Optimal;
      Eigen::VectorXd y = duals();
      if (y.sum() >= stop_objective) return Status::Stopped;
      Eigen::VectorXd xb = primal();
      int r = -1;
      for (int k = 0; k < m; ++k)
        if (xb[k] < -kPrimalTol && (r < 0 || xb[k] < xb[r])) r = k;
      if (r < 0) return Status::Optimal;
      if (pivot_budget == 0) return Status::Stopped;

      Eigen::VectorXd rho = binv_.row(r).transpose();
      // nonbasic columns: (alpha, reduced cost)
      struct Cand {
        int col;
        double alpha;
        double d;
      };
      std::vector<Cand> cands;
      for (int a = 0; a < A; ++a) {
        if (!alive_[a] || basic_[a] || col_rows_[a].empty()) continue;
        double alpha = 0.0, load = 0.0;
        for (int i : col_rows_[a]) {
          alpha += rho[i];
          load += y[i];
        }
        if (alpha < -kPivotTol) cands.push_back({a, alpha, cost_[a] - load});
      }
      std::vector<char> surplus_basic(m, 0);
      for (int col : basis_)
        if (col >= A) surplus_basic[col - A] = 1;
      for (int i = 0; i < m; ++i)
        if (!surplus_basic[i] && -rho[i] < -kPivotTol) cands.push_back({A + i, -rho[i], y[i]});
      if (cands.empty()) {
        if (retries++ < 1) {
          refactor();
          continue;
        }
        return Status::Unbounded;
      }
      // Harris ratio test
      double theta_max = kInf;
      for (const auto& c : cands) theta_max = std::min(theta_max, (std::max(c.d, 0.0) + kDualTol) / -c.alpha);
      int q = -1;
      double best_alpha = 0.0;
      for (const auto& c : cands)
        if (std::max(c.d, 0.0) / -c.alpha <= theta_max && -c.alpha > best_alpha) {
          best_alpha = -c.alpha;
          q = c.col;
        }

      Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
      if (q < A) {
        for (int i : col_rows_[q]) w += binv_.col(i);
      } else {
        w = -binv_.col(q - A);
      }
      if (std::abs(w[r]) < 1e-11) {
        if (retries++ < 2) {
          refactor();
          continue;
        }
        return Status::Trouble;
      }
      retries = 0;
      Eigen::RowVectorXd pivot_row = binv_.row(r) / w[r];
      w[r] = 0.0;
      binv_.noalias() -= w * pivot_row;
      binv_.row(r) = pivot_row;
      const int out = basis_[r];
      if (out < A) basic_[out] = 0;
      basis_[r] = q;
      if (q < A) basic_[q] = 1;
      --pivot_budget;
      if (++since_refactor_ >= kRefactorEvery) refactor();
    }
  }

  Eigen::VectorXd duals() const {
    const int m = rows();
    const int A = arcs_count();
    Eigen::VectorXd cb(m);
    for (int k = 0; k < m; ++k) cb[k] = basis_[k] < A ? cost_[basis_[k]] : 0.0;
    return binv_.transpose() * cb;
  }

  Eigen::VectorXd primal() const { return binv_.rowwise().sum(); }

  /// Arc values of the current basic solution.
  std::vector<double> arc_values() const {
    std::vector<double> x(arcs_count(), 0.0);
    Eigen::VectorXd xb = primal();
    for (int k = 0; k < rows(); ++k)
      if (basis_[k] < arcs_count()) x[basis_[k]] = std::max(0.0, xb[k]);
    return x;
  }

 private:
  int arcs_count() const { return static_cast<int>(cost_.size()); }

  void refactor() {
    since_refactor_ = 0;
    const int m = rows();
    const int A = arcs_count();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      const int col = basis_[k];
      if (col < A) {
        for (int i : col_rows_[col]) B(i, k) = 1.0;
      } else {
        B(col - A, k) = -1.0;
      }
    }
    binv_ = B.partialPivLu().inverse();
  }

  const std::vector<double>& cost_;
  const std::vector<char>& alive_;
  std::vector<std::vector<int>> row_arcs_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> basis_;
  std::vector<char> basic_;
  Eigen::MatrixXd binv_;
  int since_refactor_ = 0;
};

}  // namespace

int CutLp::add_arc(int t, int h, double c) {
  tail_.push_back(t);
  head_.push_back(h);
  cost_.push_back(c);
  return static_cast<int>(tail_.size()) - 1;
}

CutLp::CutLp(const CompactGraph& g, int root, std::span<const signed char> state)
    : n_(g.size()), nodes_(g.size()), root_(root) {
  base_ = g.weight[root];
  for (int v = 0; v < n_; ++v) {
    if (state[v] == kExcluded) continue;
    for (int u : g.adj[v])
      if (u != root && state[u] != kExcluded) add_arc(v, u, std::max(0.0, -g.weight[u]));
  }
  graph_node_.resize(n_);
  for (int v = 0; v < n_; ++v) graph_node_[v] = v;
  copy_.assign(n_, -1);
  root_arc_.assign(n_, -1);
  for (int v = 0; v < n_; ++v) {
    if (v == root || state[v] == kExcluded || !(g.weight[v] > 0)) continue;
    const int c = nodes_++;
    graph_node_.push_back(-1);
    copy_[v] = c;
    copies_.push_back(c);
    add_arc(v, c, 0.0);
    root_arc_[v] = add_arc(root, c, g.weight[v]);
    base_ += g.weight[v];
  }
  const int A = arc_count();
  in_start_.assign(nodes_ + 1, 0);
  out_start_.assign(nodes_ + 1, 0);
  for (int a = 0; a < A; ++a) {
    ++in_start_[head_[a] + 1];
    ++out_start_[tail_[a] + 1];
  }
  for (int v = 0; v < nodes_; ++v) {
    in_start_[v + 1] += in_start_[v];
    out_start_[v + 1] += out_start_[v];
  }
  in_arcs_.resize(A);
  out_arcs_.resize(A);
  auto ip = in_start_, op = out_start_;
  for (int a = 0; a < A; ++a) {
    in_arcs_[ip[head_[a]]++] = a;
    out_arcs_[op[tail_[a]]++] = a;
  }
}

int CutLp::intern(std::vector<int> cut) {
  auto [it, fresh] = pool_index_.emplace(cut, static_cast<int>(pool_.size()));
  if (fresh) pool_.push_back(std::move(cut));
  return it->second;
}

CutLp::Result CutLp::solve(std::span<const signed char> state, std::span<const int> warm, double stop_at) {
  const int A = arc_count();
  Result res;
  auto dead = [&](int x) { return graph_node_[x] >= 0 && state[graph_node_[x]] == kExcluded; };
  std::vector<char> alive(A);
  for (int a = 0; a < A; ++a) alive[a] = !dead(tail_[a]) && !dead(head_[a]);
  std::vector<int> terminals = copies_;
  for (int v = 0; v < n_; ++v)
    if (v != root_ && state[v] == kIncluded) terminals.push_back(v);

  auto entering = [&](const std::vector<int>& cut) {
    std::vector<char> in(nodes_, 0);
    for (int x : cut) in[x] = 1;
    std::vector<int> arcs;
    for (int x : cut)
      for (int k = in_start_[x]; k < in_start_[x + 1]; ++k) {
        const int a = in_arcs_[k];
        if (alive[a] && !in[tail_[a]]) arcs.push_back(a);
      }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
  };

  DualSimplex lp(cost_, alive);
  std::vector<int> row_cut;
  std::vector<char> in_lp;
  auto add_cut = [&](int id) {
    if (static_cast<int>(in_lp.size()) <= id) in_lp.resize(pool_.size(), 0);
    if (in_lp[id]) return true;
    auto arcs = entering(pool_[id]);
    if (arcs.empty()) return false;  // a terminal cut off from the root
    in_lp[id] = 1;
    row_cut.push_back(id);
    lp.add_row(std::move(arcs));
    return true;
  };
  for (int id : warm)
    if (!add_cut(id)) {
      res.feasible = false;
      return res;
    }

  const double stop_cost = base_ - stop_at;
  std::size_t budget = kMaxPivots;
  for (int round = 0; round < kMaxRounds; ++round) {
    // every row has an arc, so the covering LP is feasible and anything but
    // Optimal is a budget stop or numerical trouble; the duals stay usable
    if (lp.run(stop_cost, budget) != DualSimplex::Status::Optimal) break;

    // separation on the current arc values
    const std::vector<double> x = lp.arc_values();
    std::vector<int> fresh;
    for (int t : terminals) {
      // nested back cuts: saturate each cut found and look again
      std::vector<double> cap = x;
      for (int k = 0; k < kNestedCuts; ++k) {
        MaxFlow net(nodes_);
        for (int a = 0; a < A; ++a)
          if (alive[a] && cap[a] > 1e-12) net.add_arc(tail_[a], head_[a], cap[a]);
        if (net.run(root_, t) >= 1.0 - kCutTol) break;
        auto side = net.sink_side(t);
        std::vector<int> cut;
        for (int v = 0; v < nodes_; ++v)
          if (side[v]) cut.push_back(v);
        for (int v : cut)
          for (int i = in_start_[v]; i < in_start_[v + 1]; ++i) {
            const int a = in_arcs_[i];
            if (alive[a] && !side[tail_[a]]) cap[a] = 1.0;
          }
        fresh.push_back(intern(std::move(cut)));
      }
    }
    if (fresh.empty()) {
      res.converged = true;
      break;
    }
    if (lp.rows() > 2 * static_cast<int>(terminals.size()) + 50) {
      auto kept = lp.drop_slack_rows();
      std::vector<int> rc;
      for (int i : kept) rc.push_back(row_cut[i]);
      for (int id : row_cut) in_lp[id] = 0;
      row_cut = std::move(rc);
      for (int id : row_cut) in_lp[id] = 1;
    }
    bool added = false;
    for (int id : fresh) {
      const std::size_t before = row_cut.size();
      if (!add_cut(id)) {
        res.feasible = false;
        return res;
      }
      added |= row_cut.size() > before;
    }
    if (!added) break;
  }
  res.pivots = kMaxPivots - budget;

  // safe bound from the duals: cost(T) >= sum u - sum excess + rc(T)
  Eigen::VectorXd y = lp.duals();
  std::vector<double> load(A, 0.0);
  double total = 0.0;
  for (int i = 0; i < lp.rows(); ++i) {
    const double u = std::max(0.0, y[i]);
    if (u <= 0.0) continue;
    total += u;
    if (u > 1e-9) res.binding.push_back(row_cut[i]);
    for (int a : lp.row(i)) load[a] += u;
  }
  std::vector<double> rc(A, kInf);
  double excess = 0.0;
  for (int a = 0; a < A; ++a) {
    if (!alive[a]) continue;
    excess += std::max(0.0, load[a] - cost_[a]);
    rc[a] = std::max(0.0, cost_[a] - load[a]);
  }
  const double lower = total - excess;
  res.upper = base_ - lower;

  std::vector<double> x = lp.arc_values();
  res.node_value.assign(n_, 0.0);
  for (int a = 0; a < A; ++a)
    if (alive[a] && head_[a] < n_) res.node_value[head_[a]] += x[a];
  res.node_value[root_] = 1.0;
  for (int v = 0; v < n_; ++v) {
    if (state[v] == kIncluded) res.node_value[v] = 1.0;
    res.node_value[v] = std::min(1.0, res.node_value[v]);
  }

  auto dijkstra = [&](std::span<const int> sources, bool reverse) {
    std::vector<double> dist(nodes_, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int s : sources) {
      dist[s] = 0.0;
      pq.push({0.0, s});
    }
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      const auto& start = reverse ? in_start_ : out_start_;
      const auto& arcs = reverse ? in_arcs_ : out_arcs_;
      for (int k = start[v]; k < start[v + 1]; ++k) {
        const int a = arcs[k];
        if (!alive[a]) continue;
        const int u = reverse ? tail_[a] : head_[a];
        const double nd = d + rc[a];
        if (nd < dist[u]) {
          dist[u] = nd;
          pq.push({nd, u});
        }
      }
    }
    dist.resize(n_);
    return dist;
  };
  const int src[] = {root_};
  res.dist_in = dijkstra(src, false);
  res.dist_out = dijkstra(terminals, true);
  res.copy_rc.assign(n_, 0.0);
  for (int v = 0; v < n_; ++v)
    if (root_arc_[v] >= 0) res.copy_rc[v] = rc[root_arc_[v]];
  return res;
}

}  // namespace mwcs
