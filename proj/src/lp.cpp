#include "warmcg/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace warmcg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualTol = tol::lp_pivot;   // reduced-cost eligibility
constexpr double kPivotTol = tol::lp_pivot;  // ratio-test pivot threshold
constexpr double kDriveTol = 1e-7;           // pivot threshold when driving out artificials
constexpr int kRefreshEvery = 512;           // pivots between full recomputes
constexpr int kIterationCap = 50000;

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, Free };
}  // namespace

LpProblem LpProblem::relaxation(const MilpInstance& inst, const ConstraintSet& active) {
  LpProblem lp;
  const int nv = inst.num_vars();
  lp.objective = inst.objective;
  lp.lo.assign(nv, -kInf);
  lp.hi.assign(nv, kInf);
  for (int v = 0; v < nv; ++v) {
    const VarBounds& b = inst.var_bounds[v];
    if (b.lo) lp.lo[v] = *b.lo;
    if (b.hi) lp.hi[v] = *b.hi;
  }
  for (int id : active.members()) {
    const Constraint& c = inst.constraints[id];
    lp.rows.push_back(c.coeffs);
    lp.rhs.push_back(c.rhs);
    lp.row_ids.push_back(id);
  }
  return lp;
}

double dual_objective(const LpProblem& lp, std::span<const double> duals) {
  if (duals.size() != static_cast<size_t>(lp.num_rows()))
    throw Error("dual_objective: multiplier count mismatch");
  std::vector<double> d = lp.objective;
  double g = 0.0;
  for (int j = 0; j < lp.num_rows(); ++j) {
    g -= duals[j] * lp.rhs[j];
    for (const Term& t : lp.rows[j]) d[t.var] += duals[j] * t.coef;
  }
  for (int v = 0; v < lp.num_vars(); ++v) {
    if (d[v] > kDualTol) {
      if (lp.lo[v] == -kInf) return -kInf;
      g += d[v] * lp.lo[v];
    } else if (d[v] < -kDualTol) {
      if (lp.hi[v] == kInf) return -kInf;
      g += d[v] * lp.hi[v];
    }
  }
  return g;
}

// Dense bounded-variable simplex state. Column layout: [0,V) structural,
// [V,V+R) slacks, [V+R,V+2R) artificials. The tableau stores B^-1 A row-major.
struct Simplex::Impl {
  LpProblem prob;
  int R = 0, V = 0, C = 0;

  std::vector<double> tab;   // R x C
  std::vector<double> drow;  // reduced costs
  std::vector<double> x;
  std::vector<double> wlo, whi;
  std::vector<double> cost;  // current phase costs
  std::vector<VarState> state;
  std::vector<int> basis;
  int ncols_active = 0;  // row operations touch columns [0, ncols_active)
  int iterations = 0;
  int pivots_since_refresh = 0;

  explicit Impl(const LpProblem& lp) : prob(lp) {
    R = prob.num_rows();
    V = prob.num_vars();
    C = V + 2 * R;
    if (V <= 0) throw Error("simplex: no variables");
    if (prob.lo.size() != static_cast<size_t>(V) || prob.hi.size() != static_cast<size_t>(V))
      throw Error("simplex: bound vector size mismatch");
    if (prob.rhs.size() != static_cast<size_t>(R))
      throw Error("simplex: rhs size mismatch");
    for (const auto& row : prob.rows)
      for (const Term& t : row)
        if (t.var < 0 || t.var >= V) throw Error("simplex: row index out of range");
    tab.resize(static_cast<size_t>(R) * C);
    drow.resize(C);
    x.resize(C);
    wlo.resize(C);
    whi.resize(C);
    cost.resize(C);
    state.resize(C);
    basis.resize(std::max(R, 1));
  }

  double* row_ptr(int i) { return tab.data() + static_cast<size_t>(i) * C; }
  const double* row_ptr(int i) const { return tab.data() + static_cast<size_t>(i) * C; }

  bool is_fixed(int k) const { return wlo[k] == whi[k]; }

  void recompute_drow() {
    for (int j = 0; j < ncols_active; ++j) drow[j] = cost[j];
    for (int i = 0; i < R; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      const double* ri = row_ptr(i);
      for (int j = 0; j < ncols_active; ++j) drow[j] -= cb * ri[j];
    }
    for (int i = 0; i < R; ++i) drow[basis[i]] = 0.0;
  }

  // Recomputes basic values from the inverse representation: x_B = B^-1 b -
  // sum over nonbasic k of (B^-1 A_k) x_k. The slack columns of the tableau
  // are exactly the columns of B^-1.
  void refresh_basics() {
    if (R == 0) return;
    std::vector<double> xb(R, 0.0);
    for (int i = 0; i < R; ++i) {
      const double* ri = row_ptr(i);
      double acc = 0.0;
      for (int j = 0; j < R; ++j) acc += ri[V + j] * prob.rhs[j];
      xb[i] = acc;
    }
    for (int k = 0; k < ncols_active; ++k) {
      if (state[k] == VarState::Basic || x[k] == 0.0) continue;
      const double xk = x[k];
      for (int i = 0; i < R; ++i) xb[i] -= row_ptr(i)[k] * xk;
    }
    for (int i = 0; i < R; ++i) x[basis[i]] = xb[i];
  }

  // Entering column by Bland's rule (-1 at phase optimality); *sigma gets the
  // movement direction, +1 up from a lower bound, -1 down from an upper.
  int find_entering(int* sigma) const {
    for (int j = 0; j < V + R; ++j) {  // artificials never enter
      const VarState s = state[j];
      if (s == VarState::Basic || is_fixed(j)) continue;
      const double d = drow[j];
      if (d < -kDualTol && (s == VarState::AtLower || s == VarState::Free)) {
        *sigma = +1;
        return j;
      }
      if (d > kDualTol && (s == VarState::AtUpper || s == VarState::Free)) {
        *sigma = -1;
        return j;
      }
    }
    return -1;
  }

  double ratio_of_row(int i, int e, int sigma) const {
    const double delta = -sigma * row_ptr(i)[e];
    const int k = basis[i];
    if (delta < -kPivotTol && wlo[k] != -kInf) return std::max(0.0, (x[k] - wlo[k]) / (-delta));
    if (delta > kPivotTol && whi[k] != kInf) return std::max(0.0, (whi[k] - x[k]) / delta);
    return kInf;
  }

  // One simplex iteration for entering column e. Returns false when the step
  // is unbounded.
  bool step(int e, int sigma, int phase) {
    double tmin = kInf;
    for (int i = 0; i < R; ++i) tmin = std::min(tmin, ratio_of_row(i, e, sigma));

    double town = kInf;  // step at which the entering variable reaches its other bound
    if (wlo[e] != -kInf && whi[e] != kInf) town = whi[e] - wlo[e];

    if (tmin == kInf && town == kInf) {
      if (phase == 1) throw Error("simplex: phase 1 unbounded (internal)");
      return false;
    }

    const double tie = 1e-10 * (1.0 + std::min(tmin, town));
    if (town < tmin - tie) {
      // Bound flip: the entering variable crosses to its opposite bound.
      for (int i = 0; i < R; ++i) {
        const double delta = -sigma * row_ptr(i)[e];
        if (delta != 0.0) x[basis[i]] += delta * town;
      }
      x[e] = sigma > 0 ? whi[e] : wlo[e];
      state[e] = sigma > 0 ? VarState::AtUpper : VarState::AtLower;
      ++iterations;
      return true;
    }

    // Blocking row: among rows within the tie window of tmin, the lowest
    // leaving variable index (Bland).
    int r = -1;
    for (int i = 0; i < R; ++i) {
      if (ratio_of_row(i, e, sigma) <= tmin + tie && (r == -1 || basis[i] < basis[r])) r = i;
    }
    if (r < 0) throw Error("simplex: ratio test lost its blocking row (internal)");

    for (int i = 0; i < R; ++i) {
      if (i == r) continue;
      const double delta = -sigma * row_ptr(i)[e];
      if (delta != 0.0) x[basis[i]] += delta * tmin;
    }
    const int leaving = basis[r];
    const double delta_r = -sigma * row_ptr(r)[e];
    x[leaving] = delta_r < 0.0 ? wlo[leaving] : whi[leaving];
    state[leaving] = delta_r < 0.0 ? VarState::AtLower : VarState::AtUpper;
    if (leaving >= V + R) {
      // An artificial that leaves the basis is retired for good.
      wlo[leaving] = whi[leaving] = 0.0;
      x[leaving] = 0.0;
      state[leaving] = VarState::AtLower;
    }
    x[e] += sigma * tmin;

    pivot(r, e);
    ++iterations;
    if (++pivots_since_refresh >= kRefreshEvery) {
      refresh_basics();
      recompute_drow();
      pivots_since_refresh = 0;
    }
    return true;
  }

  void pivot(int r, int e) {
    double* pr = row_ptr(r);
    const double inv = 1.0 / pr[e];
    for (int j = 0; j < ncols_active; ++j) pr[j] *= inv;
    pr[e] = 1.0;
    for (int i = 0; i < R; ++i) {
      if (i == r) continue;
      double* ri = row_ptr(i);
      const double f = ri[e];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols_active; ++j) ri[j] -= f * pr[j];
      ri[e] = 0.0;
    }
    if (drow[e] != 0.0) {
      const double f = drow[e];
      for (int j = 0; j < ncols_active; ++j) drow[j] -= f * pr[j];
    }
    drow[e] = 0.0;
    basis[r] = e;
    state[e] = VarState::Basic;
  }

  // Bland iterations until phase optimality. Returns -1 on optimality, or the
  // entering column of an unbounded step (phase 2 only).
  int run_phase(int phase, int* ray_sigma) {
    bool refreshed = true;
    while (true) {
      if (iterations > kIterationCap)
        throw Error("simplex: iteration cap exceeded; cycling suspected");
      int sigma = 0;
      const int e = find_entering(&sigma);
      if (e < 0) {
        // Rule out drift-induced false optimality before declaring the phase done.
        if (!refreshed) {
          refresh_basics();
          recompute_drow();
          refreshed = true;
          continue;
        }
        return -1;
      }
      if (!step(e, sigma, phase)) {
        *ray_sigma = sigma;
        return e;
      }
      refreshed = false;
    }
  }

  LpResult solve(std::span<const double> lo, std::span<const double> hi) {
    if (lo.size() != static_cast<size_t>(V) || hi.size() != static_cast<size_t>(V))
      throw Error("simplex: bound vector size mismatch");
    LpResult res;
    iterations = 0;
    pivots_since_refresh = 0;

    for (int v = 0; v < V; ++v) {
      wlo[v] = lo[v];
      whi[v] = hi[v];
      if (lo[v] > hi[v]) {  // contradictory working bounds
        res.status = SolveStatus::Infeasible;
        return res;
      }
    }
    for (int j = 0; j < R; ++j) {
      wlo[V + j] = 0.0;
      whi[V + j] = kInf;
      wlo[V + R + j] = whi[V + R + j] = 0.0;
    }

    // Nonbasic start: every structural variable sits at a bound (or zero when
    // free); each row gets its slack or, when the slack would start negative,
    // an artificial as the initial basic variable.
    for (int v = 0; v < V; ++v) {
      if (wlo[v] != -kInf) {
        x[v] = wlo[v];
        state[v] = VarState::AtLower;
      } else if (whi[v] != kInf) {
        x[v] = whi[v];
        state[v] = VarState::AtUpper;
      } else {
        x[v] = 0.0;
        state[v] = VarState::Free;
      }
    }

    std::fill(tab.begin(), tab.end(), 0.0);
    bool any_artificial = false;
    for (int j = 0; j < R; ++j) {
      double act = 0.0;
      for (const Term& t : prob.rows[j]) act += t.coef * x[t.var];
      const double s = prob.rhs[j] - act;
      const int slack = V + j;
      const int art = V + R + j;
      double sign = 1.0;
      if (s >= 0.0) {
        basis[j] = slack;
        state[slack] = VarState::Basic;
        x[slack] = s;
        x[art] = 0.0;
        state[art] = VarState::AtLower;
      } else {
        // The artificial's column is -e_j, so its tableau row is the negated
        // original row and the artificial's own entry is +1.
        basis[j] = art;
        state[art] = VarState::Basic;
        whi[art] = kInf;
        x[art] = -s;
        x[slack] = 0.0;
        state[slack] = VarState::AtLower;
        sign = -1.0;
        any_artificial = true;
      }
      double* rj = row_ptr(j);
      for (const Term& t : prob.rows[j]) rj[t.var] += sign * t.coef;
      rj[slack] = sign;
      if (sign < 0.0) rj[art] = 1.0;
    }

    int ray_sigma = 0;
    if (any_artificial) {
      ncols_active = V + 2 * R;
      std::fill(cost.begin(), cost.end(), 0.0);
      for (int j = 0; j < R; ++j)
        if (basis[j] == V + R + j) cost[V + R + j] = 1.0;
      recompute_drow();
      run_phase(1, &ray_sigma);
      refresh_basics();

      double infeas = 0.0;
      int worst_row = -1;
      for (int i = 0; i < R; ++i) {
        if (basis[i] < V + R) continue;
        const double v = x[basis[i]];
        infeas += v;
        if (worst_row < 0 || v > x[basis[worst_row]]) worst_row = i;
      }
      if (infeas > tol::lp_phase1) {
        res.status = SolveStatus::Infeasible;
        res.certificate_row = worst_row;
        res.iterations = iterations;
        return res;
      }

      // Drive remaining (now ~zero) artificials out of the basis with
      // degenerate pivots; rows with no usable pivot column are redundant and
      // keep their artificial basic at zero, where it never blocks anything.
      for (int r = 0; r < R; ++r) {
        const int art = basis[r];
        if (art < V + R) continue;
        int best = -1;
        double best_mag = 0.0;
        bool best_is_fixed = true;
        const double* rr = row_ptr(r);
        for (int j = 0; j < V + R; ++j) {
          if (state[j] == VarState::Basic) continue;
          const double mag = std::abs(rr[j]);
          if (mag <= kDriveTol) continue;
          const bool jf = is_fixed(j);
          if (best == -1 || (best_is_fixed && !jf) || (best_is_fixed == jf && mag > best_mag)) {
            best = j;
            best_mag = mag;
            best_is_fixed = jf;
          }
        }
        if (best >= 0) pivot(r, best);
        wlo[art] = whi[art] = 0.0;
        x[art] = 0.0;
        if (state[art] != VarState::Basic) state[art] = VarState::AtLower;
      }
      refresh_basics();
    }

    // Phase 2 on the true objective; artificial columns no longer participate.
    ncols_active = V + R;
    std::fill(cost.begin(), cost.end(), 0.0);
    for (int v = 0; v < V; ++v) cost[v] = prob.objective[v];
    recompute_drow();
    const int ray_col = run_phase(2, &ray_sigma);

    if (ray_col >= 0) {
      std::vector<double> ray(V, 0.0);
      if (ray_col < V) ray[ray_col] = ray_sigma;
      for (int i = 0; i < R; ++i) {
        if (basis[i] < V) ray[basis[i]] = -ray_sigma * row_ptr(i)[ray_col];
      }
      double mx = 0.0;
      for (double rv : ray) mx = std::max(mx, std::abs(rv));
      if (mx <= 0.0) throw Error("simplex: degenerate unbounded ray (internal)");
      for (double& rv : ray) rv /= mx;
      res.status = SolveStatus::Unbounded;
      res.ray = std::move(ray);
      res.iterations = iterations;
      return res;
    }

    refresh_basics();
    recompute_drow();
    res.status = SolveStatus::Optimal;
    res.solution.assign(x.begin(), x.begin() + V);
    double obj = 0.0;
    for (int v = 0; v < V; ++v) obj += prob.objective[v] * x[v];
    res.objective = obj;
    res.row_duals.resize(R);
    for (int j = 0; j < R; ++j) res.row_duals[j] = std::max(0.0, drow[V + j]);
    res.iterations = iterations;
    return res;
  }
};

Simplex::Simplex(const LpProblem& lp) : impl_(std::make_unique<Impl>(lp)) {}
Simplex::~Simplex() = default;
Simplex::Simplex(Simplex&&) noexcept = default;
Simplex& Simplex::operator=(Simplex&&) noexcept = default;

LpResult Simplex::solve() { return impl_->solve(impl_->prob.lo, impl_->prob.hi); }

LpResult Simplex::solve(std::span<const double> lo, std::span<const double> hi) {
  return impl_->solve(lo, hi);
}

LpResult solve_lp(const LpProblem& lp) {
  Simplex s(lp);
  return s.solve();
}

}  // namespace warmcg
