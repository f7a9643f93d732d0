#pragma once

#include "warmcg/milp.hpp"
#include "warmcg/model.hpp"

namespace warmcg {

// One constraint added during generation. `from_ray` marks additions chosen by
// the unbounded-relaxation rule (argmax a_j . r) rather than by violation.
struct CgStep {
  int iteration = 0;
  int constraint_id = -1;
  double amount = 0.0;
  bool from_ray = false;
};

struct CgTrace {
  ConstraintSet initial;
  ConstraintSet final_set;
  std::vector<CgStep> additions;
  SolveOutcome outcome;   // Optimal on success
  int iterations = 0;     // reduced-problem solves, = 1 + additions
  double solve_ms = 0.0;  // time spent in the reduced solves
};

// Iteratively solves the problem restricted to a growing constraint set:
// starting from `initial`, add the most violated missing row until none is
// violated; an unbounded reduced problem instead adds the missing row most
// increasing along the ray. Terminates in at most |J| - |initial| additions
// with an outcome matching the full problem.
CgTrace constraint_generation(const MilpInstance& inst, const ConstraintSet& initial,
                              const MilpOptions& opts = {});

// Cold start: only the rows the learner never sees (the non-learnable ones).
CgTrace constraint_generation_cold(const MilpInstance& inst, const MilpOptions& opts = {});

struct IdentifyResult {
  ConstraintSet binding;    // rows active at the full optimum
  ConstraintSet invariant;  // binding set closed under constraint generation
  SolveOutcome full;        // full-problem solve the sets are anchored to
  double full_ms = 0.0;
  CgTrace trace;
};

// Solves the full problem, takes the binding set of its optimum, and grows it
// by constraint generation until the reduced objective matches the full one.
IdentifyResult identify_invariant_set(const MilpInstance& inst, const MilpOptions& opts = {});

// Same, reusing an already computed full solve.
IdentifyResult identify_invariant_set(const MilpInstance& inst, const SolveOutcome& full,
                                      double full_ms, const MilpOptions& opts = {});

}  // namespace warmcg
