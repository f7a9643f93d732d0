#include "warmcg/milp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace warmcg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  double bound = -kInf;  // parent relaxation objective
  long id = 0;
  std::vector<double> ilo, ihi;  // bounds of the integer variables only
};

// Best bound first; equal bounds go to the older node.
struct NodeWorse {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Most fractional integer variable (score min(f, 1-f)), ties to the lowest
// index; -1 when every integer variable is integral within tolerance.
int pick_branch_var(const MilpInstance& inst, const std::vector<double>& z) {
  int best = -1;
  double best_score = tol::integrality;
  for (int v = inst.num_continuous; v < inst.num_vars(); ++v) {
    const double f = z[v] - std::floor(z[v]);
    const double score = std::min(f, 1.0 - f);
    if (score > best_score) {
      best_score = score;
      best = v;
    }
  }
  return best;
}
}  // namespace

SolveOutcome solve_milp(const MilpInstance& inst, const ConstraintSet& active,
                        const MilpOptions& opts) {
  const LpProblem base = LpProblem::relaxation(inst, active);
  Simplex spx(base);
  const int nc = inst.num_continuous;
  const int q = inst.num_integer;

  std::vector<double> lo = base.lo, hi = base.hi;
  auto eval = [&](const Node& nd) {
    for (int i = 0; i < q; ++i) {
      lo[nc + i] = nd.ilo[i];
      hi[nc + i] = nd.ihi[i];
    }
    return spx.solve(lo, hi);
  };

  Node root;
  root.ilo.assign(base.lo.begin() + nc, base.lo.end());
  root.ihi.assign(base.hi.begin() + nc, base.hi.end());

  long nodes = 1;
  LpResult res = eval(root);
  if (res.status == SolveStatus::Unbounded) return SolveOutcome::make_unbounded(res.ray);
  if (res.status == SolveStatus::Infeasible) return SolveOutcome::make_infeasible();

  double best_obj = kInf;
  std::vector<double> best_sol;
  std::priority_queue<Node, std::vector<Node>, NodeWorse> open;
  long next_id = 1;

  auto expand = [&](const Node& nd, const LpResult& r) {
    const int v = pick_branch_var(inst, r.solution);
    if (v < 0) {
      if (r.objective < best_obj) {
        best_obj = r.objective;
        best_sol = r.solution;
      }
      return;
    }
    Node down = nd, up = nd;
    down.bound = up.bound = r.objective;
    down.id = next_id++;
    up.id = next_id++;
    down.ihi[v - nc] = std::floor(r.solution[v]);
    up.ilo[v - nc] = std::ceil(r.solution[v]);
    open.push(std::move(down));
    open.push(std::move(up));
  };

  expand(root, res);
  while (!open.empty()) {
    Node nd = open.top();
    open.pop();
    if (nd.bound >= best_obj - opts.gap_abs) continue;  // cannot improve
    if (++nodes > opts.node_limit)
      throw Error("solve_milp: node limit exceeded on '" + inst.name + "' (" +
                  std::to_string(opts.node_limit) + " nodes)");
    res = eval(nd);
    if (res.status == SolveStatus::Infeasible) continue;
    if (res.status == SolveStatus::Unbounded)
      throw Error("solve_milp: child relaxation unbounded (internal)");
    if (res.objective >= best_obj - opts.gap_abs) continue;
    expand(nd, res);
  }

  if (best_sol.empty()) return SolveOutcome::make_infeasible();
  return SolveOutcome::make_optimal(std::move(best_sol), best_obj);
}

SolveOutcome solve_full(const MilpInstance& inst, const MilpOptions& opts) {
  return solve_milp(inst, ConstraintSet(inst, inst.learnable_ids()), opts);
}

SolveOutcome solve_bruteforce(const MilpInstance& inst, const ConstraintSet& active,
                              const MilpOptions& opts) {
  const int nc = inst.num_continuous;
  const int q = inst.num_integer;
  std::vector<long> glo(q), ghi(q);
  double cells = 1.0;
  for (int i = 0; i < q; ++i) {
    const VarBounds& b = inst.var_bounds[nc + i];
    if (!b.lo || !b.hi)
      throw Error("solve_bruteforce: integer variable " + std::to_string(nc + i) +
                  " needs finite bounds");
    glo[i] = static_cast<long>(std::ceil(*b.lo - 1e-9));
    ghi[i] = static_cast<long>(std::floor(*b.hi + 1e-9));
    if (glo[i] > ghi[i]) return SolveOutcome::make_infeasible();
    cells *= static_cast<double>(ghi[i] - glo[i] + 1);
  }
  if (cells > static_cast<double>(opts.bruteforce_grid))
    throw Error("solve_bruteforce: integer grid too large (" + std::to_string(cells) +
                " cells, cap " + std::to_string(opts.bruteforce_grid) + ")");

  const LpProblem base = LpProblem::relaxation(inst, active);
  Simplex spx(base);
  std::vector<double> lo = base.lo, hi = base.hi;

  double best_obj = kInf;
  std::vector<double> best_sol;
  std::vector<long> a = glo;
  while (true) {
    for (int i = 0; i < q; ++i) lo[nc + i] = hi[nc + i] = static_cast<double>(a[i]);
    const LpResult res = spx.solve(lo, hi);
    if (res.status == SolveStatus::Unbounded) return SolveOutcome::make_unbounded(res.ray);
    if (res.status == SolveStatus::Optimal && res.objective < best_obj - 1e-12) {
      best_obj = res.objective;
      best_sol = res.solution;
    }
    int pos = q - 1;  // odometer, last variable fastest
    while (pos >= 0 && a[pos] == ghi[pos]) {
      a[pos] = glo[pos];
      --pos;
    }
    if (pos < 0) break;
    ++a[pos];
  }

  if (best_sol.empty()) return SolveOutcome::make_infeasible();
  return SolveOutcome::make_optimal(std::move(best_sol), best_obj);
}

}  // namespace warmcg
