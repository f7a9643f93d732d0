#pragma once

#include <memory>
#include <span>
#include <vector>

#include "warmcg/model.hpp"

namespace warmcg {

// An LP over the structural variables of an instance, restricted to the rows
// of an active set, with working bounds (integrality dropped). Row order
// follows ascending constraint id.
struct LpProblem {
  std::vector<std::vector<Term>> rows;
  std::vector<double> rhs;
  std::vector<int> row_ids;  // originating constraint ids, ascending
  std::vector<double> objective;
  std::vector<double> lo, hi;  // +-infinity when absent

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_vars() const { return static_cast<int>(objective.size()); }

  static LpProblem relaxation(const MilpInstance& inst, const ConstraintSet& active);
};

struct LpResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> solution;   // structural values when Optimal
  double objective = 0.0;         // when Optimal
  std::vector<double> ray;        // improving structural direction when Unbounded
  std::vector<double> row_duals;  // one multiplier >= 0 per row when Optimal
  int certificate_row = -1;       // row position that cannot be satisfied, when Infeasible
  int iterations = 0;             // simplex pivots
};

// Dual objective -lambda'b + sum_i min(d_i lo_i, d_i hi_i) where d = c - A'lambda;
// equals the primal optimum at an optimal (solution, duals) pair.
double dual_objective(const LpProblem& lp, std::span<const double> duals);

// Two-phase primal simplex with bounded variables and Bland's rule. Reusable
// across solves that differ only in variable bounds (branch-and-bound nodes).
class Simplex {
 public:
  explicit Simplex(const LpProblem& lp);
  ~Simplex();
  Simplex(Simplex&&) noexcept;
  Simplex& operator=(Simplex&&) noexcept;

  // Solves with the problem's own bounds.
  LpResult solve();
  // Solves with overridden bounds (sizes must match num_vars()).
  LpResult solve(std::span<const double> lo, std::span<const double> hi);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LpResult solve_lp(const LpProblem& lp);

}  // namespace warmcg
