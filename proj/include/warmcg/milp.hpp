#pragma once

#include "warmcg/lp.hpp"
#include "warmcg/model.hpp"

namespace warmcg {

struct MilpOptions {
  long node_limit = 1000000;         // hard cap; exceeding it is an error, never a silent answer
  double gap_abs = tol::mip_gap;     // absolute optimality gap
  long bruteforce_grid = 1000000;    // largest integer grid enumerate() will accept
};

// Branch-and-bound over the LP relaxation restricted to `active`: best-bound
// node selection (ties to the older node), most-fractional branching (ties to
// the lowest variable index). An unbounded root relaxation yields Unbounded
// with the root's ray.
SolveOutcome solve_milp(const MilpInstance& inst, const ConstraintSet& active,
                        const MilpOptions& opts = {});

// Convenience: solve with every row active.
SolveOutcome solve_full(const MilpInstance& inst, const MilpOptions& opts = {});

// Independent reference: enumerate every integer assignment (bounds must be
// finite and the grid no larger than opts.bruteforce_grid), solving an LP in
// the continuous variables for each.
SolveOutcome solve_bruteforce(const MilpInstance& inst, const ConstraintSet& active,
                              const MilpOptions& opts = {});

}  // namespace warmcg
