#include <doctest.h>

#include <cmath>
#include <limits>

#include "warmcg/instances.hpp"
#include "warmcg/lp.hpp"

using namespace warmcg;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpProblem box_lp(std::vector<double> objective, std::vector<double> lo, std::vector<double> hi) {
  LpProblem lp;
  lp.objective = std::move(objective);
  lp.lo = std::move(lo);
  lp.hi = std::move(hi);
  return lp;
}

void add_row(LpProblem& lp, std::vector<Term> terms, double rhs) {
  lp.rows.push_back(std::move(terms));
  lp.rhs.push_back(rhs);
  lp.row_ids.push_back(lp.num_rows() - 1);
}

// Feasibility of an Optimal result against rows and bounds.
void check_primal_feasible(const LpProblem& lp, const LpResult& res, double eps = 1e-7) {
  REQUIRE(res.status == SolveStatus::Optimal);
  REQUIRE(static_cast<int>(res.solution.size()) == lp.num_vars());
  for (int i = 0; i < lp.num_rows(); ++i) {
    double v = 0.0;
    for (const Term& t : lp.rows[i]) v += t.coef * res.solution[t.var];
    CHECK(v <= lp.rhs[i] + eps);
  }
  for (int v = 0; v < lp.num_vars(); ++v) {
    CHECK(res.solution[v] >= lp.lo[v] - eps);
    CHECK(res.solution[v] <= lp.hi[v] + eps);
  }
}

// Equal primal and dual objectives certify optimality of both.
void check_strong_duality(const LpProblem& lp, const LpResult& res, double eps = 1e-6) {
  REQUIRE(res.row_duals.size() == lp.rows.size());
  for (double d : res.row_duals) CHECK(d >= -1e-9);
  CHECK(dual_objective(lp, res.row_duals) == doctest::Approx(res.objective).epsilon(eps));
}

}  // namespace

TEST_CASE("simplex solves a two-variable vertex problem") {
  // min -x - 2y subject to x + y <= 3, x <= 2, y <= 2, x,y >= 0
  LpProblem lp = box_lp({-1.0, -2.0}, {0.0, 0.0}, {kInf, kInf});
  add_row(lp, {{0, 1.0}, {1, 1.0}}, 3.0);
  add_row(lp, {{0, 1.0}}, 2.0);
  add_row(lp, {{1, 1.0}}, 2.0);

  LpResult res = solve_lp(lp);
  check_primal_feasible(lp, res);
  CHECK(res.objective == doctest::Approx(-5.0));
  CHECK(res.solution[0] == doctest::Approx(1.0));
  CHECK(res.solution[1] == doctest::Approx(2.0));
  check_strong_duality(lp, res);
}

TEST_CASE("simplex puts unconstrained variables at the right bound") {
  LpProblem lp = box_lp({3.0, -4.0, 0.0}, {-1.0, -2.0, 0.5}, {2.0, 5.0, 1.5});
  LpResult res = solve_lp(lp);
  check_primal_feasible(lp, res);
  CHECK(res.solution[0] == doctest::Approx(-1.0));
  CHECK(res.solution[1] == doctest::Approx(5.0));
  CHECK(res.objective == doctest::Approx(-23.0));
}

TEST_CASE("simplex detects an unbounded problem and returns an improving ray") {
  // min -x with x >= 0 free above; the row y <= 1 is irrelevant.
  LpProblem lp = box_lp({-1.0, 0.0}, {0.0, 0.0}, {kInf, 1.0});
  add_row(lp, {{1, 1.0}}, 1.0);

  LpResult res = solve_lp(lp);
  REQUIRE(res.status == SolveStatus::Unbounded);
  REQUIRE(res.ray.size() == 2);

  // The ray must strictly improve the objective and keep every row satisfied.
  double along = 0.0;
  for (size_t v = 0; v < res.ray.size(); ++v) along += lp.objective[v] * res.ray[v];
  CHECK(along < -tol::ray);
  for (int i = 0; i < lp.num_rows(); ++i) {
    double drift = 0.0;
    for (const Term& t : lp.rows[i]) drift += t.coef * res.ray[t.var];
    CHECK(drift <= tol::ray);
  }
}

TEST_CASE("simplex reports infeasibility with a certificate row") {
  // x <= -1 conflicts with x >= 0.
  LpProblem lp = box_lp({1.0}, {0.0}, {kInf});
  add_row(lp, {{0, 1.0}}, -1.0);

  LpResult res = solve_lp(lp);
  REQUIRE(res.status == SolveStatus::Infeasible);
  CHECK(res.certificate_row == 0);
}

TEST_CASE("simplex handles an equality written as a canonical pair") {
  // x + y = 2 and minimize x - y: pushed to (0, 2).
  LpProblem lp = box_lp({1.0, -1.0}, {0.0, 0.0}, {5.0, 5.0});
  add_row(lp, {{0, 1.0}, {1, 1.0}}, 2.0);
  add_row(lp, {{0, -1.0}, {1, -1.0}}, -2.0);

  LpResult res = solve_lp(lp);
  check_primal_feasible(lp, res);
  CHECK(res.objective == doctest::Approx(-2.0));
  CHECK(res.solution[0] == doctest::Approx(0.0));
  CHECK(res.solution[1] == doctest::Approx(2.0));
  check_strong_duality(lp, res);
}

TEST_CASE("duplicated rows do not disturb the optimum") {
  LpProblem lp = box_lp({-1.0, -1.0}, {0.0, 0.0}, {10.0, 10.0});
  for (int rep = 0; rep < 3; ++rep) add_row(lp, {{0, 1.0}, {1, 2.0}}, 4.0);

  LpResult res = solve_lp(lp);
  check_primal_feasible(lp, res);
  CHECK(res.objective == doctest::Approx(-4.0));
  check_strong_duality(lp, res);
}

TEST_CASE("fixed variables are respected") {
  LpProblem lp = box_lp({-1.0, -1.0}, {0.0, 2.0}, {10.0, 2.0});
  add_row(lp, {{0, 1.0}, {1, 1.0}}, 5.0);

  LpResult res = solve_lp(lp);
  check_primal_feasible(lp, res);
  CHECK(res.solution[1] == doctest::Approx(2.0));
  CHECK(res.objective == doctest::Approx(-5.0));
}

TEST_CASE("a simplex instance can be re-solved under different bounds") {
  // The branch-and-bound usage pattern: one tableau, many bound vectors.
  LpProblem lp = box_lp({-1.0, -1.0}, {0.0, 0.0}, {4.0, 4.0});
  add_row(lp, {{0, 1.0}, {1, 1.0}}, 6.0);

  Simplex simplex(lp);
  LpResult base = simplex.solve();
  CHECK(base.objective == doctest::Approx(-6.0));

  std::vector<double> lo = {0.0, 3.5}, hi = {4.0, 4.0};
  LpResult forced = simplex.solve(lo, hi);
  REQUIRE(forced.status == SolveStatus::Optimal);
  CHECK(forced.solution[1] >= 3.5 - 1e-9);
  CHECK(forced.objective == doctest::Approx(-6.0));

  lo = {0.0, 0.0};
  hi = {1.0, 1.0};
  LpResult boxed = simplex.solve(lo, hi);
  REQUIRE(boxed.status == SolveStatus::Optimal);
  CHECK(boxed.objective == doctest::Approx(-2.0));

  // Crossed override bounds are an immediate infeasibility.
  lo = {2.0, 0.0};
  hi = {1.0, 4.0};
  CHECK(simplex.solve(lo, hi).status == SolveStatus::Infeasible);

  // The original problem still solves identically afterwards.
  LpResult again = simplex.solve();
  CHECK(again.objective == doctest::Approx(base.objective));
}

TEST_CASE("random boxed problems satisfy strong duality") {
  // Feasibility is guaranteed by anchoring every row at an interior point, so
  // each solve must end Optimal; matching primal and dual objectives then
  // certify the answer without an external solver.
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(substream(99, {static_cast<std::uint64_t>(trial)}));
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    const int rows = static_cast<int>(rng.uniform_int(0, 8));

    LpProblem lp;
    lp.objective.resize(n);
    for (double& c : lp.objective) c = rng.uniform(-5.0, 5.0);
    std::vector<double> anchor(n);
    for (int v = 0; v < n; ++v) {
      const double lo = rng.uniform(-6.0, 0.0);
      const double hi = lo + rng.uniform(0.5, 8.0);
      lp.lo.push_back(lo);
      lp.hi.push_back(hi);
      anchor[v] = lo + rng.uniform() * (hi - lo);
    }
    for (int r = 0; r < rows; ++r) {
      std::vector<Term> terms;
      double at_anchor = 0.0;
      for (int v = 0; v < n; ++v) {
        const double coef = rng.uniform(-4.0, 4.0);
        if (std::abs(coef) < 0.5) continue;
        terms.push_back({v, coef});
        at_anchor += coef * anchor[v];
      }
      if (terms.empty()) continue;
      add_row(lp, std::move(terms), at_anchor + rng.uniform(0.0, 4.0));
    }

    CAPTURE(trial);
    LpResult res = solve_lp(lp);
    check_primal_feasible(lp, res);
    check_strong_duality(lp, res);
    ++solved;
  }
  CHECK(solved == 40);
}
