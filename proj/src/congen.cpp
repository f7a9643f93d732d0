#include "warmcg/congen.hpp"

#include <chrono>
#include <cmath>

namespace warmcg {

namespace {
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Missing row whose coefficient vector grows fastest along the ray, ties to
// the lowest id. Growth must be genuinely positive, otherwise the problem is
// unbounded no matter which rows are added.
CgStep ray_cut(const MilpInstance& inst, const ConstraintSet& active,
               const std::vector<double>& ray) {
  CgStep step;
  step.from_ray = true;
  for (int j = 0; j < inst.num_constraints(); ++j) {
    if (active.contains(j)) continue;
    const double g = inst.constraints[j].value_at(ray);
    if (g > step.amount) {
      step.amount = g;
      step.constraint_id = j;
    }
  }
  if (step.constraint_id < 0 || step.amount <= tol::ray)
    throw Error("constraint_generation: '" + inst.name +
                "' is genuinely unbounded over the full constraint set");
  return step;
}
}  // namespace

CgTrace constraint_generation(const MilpInstance& inst, const ConstraintSet& initial,
                              const MilpOptions& opts) {
  CgTrace trace;
  trace.initial = initial;
  trace.final_set = initial;

  const int max_additions = inst.num_constraints() - initial.size();
  const auto t0 = Clock::now();
  while (true) {
    ++trace.iterations;
    SolveOutcome out = solve_milp(inst, trace.final_set, opts);
    switch (out.status) {
      case SolveStatus::Infeasible:
        // Rows only ever tighten the problem, so the full problem is infeasible too.
        throw Error("constraint_generation: '" + inst.name + "' is infeasible");
      case SolveStatus::Unbounded: {
        CgStep step = ray_cut(inst, trace.final_set, out.ray);
        step.iteration = trace.iterations;
        trace.final_set.insert(step.constraint_id);
        trace.additions.push_back(step);
        break;
      }
      case SolveStatus::Optimal: {
        const auto viol = max_violation(inst, out.solution, trace.final_set);
        if (!viol) {
          trace.outcome = std::move(out);
          trace.solve_ms = ms_since(t0);
          return trace;
        }
        CgStep step;
        step.iteration = trace.iterations;
        step.constraint_id = viol->id;
        step.amount = viol->amount;
        trace.final_set.insert(step.constraint_id);
        trace.additions.push_back(step);
        break;
      }
    }
    if (static_cast<int>(trace.additions.size()) > max_additions)
      throw Error("constraint_generation: added more rows than exist (internal)");
  }
}

CgTrace constraint_generation_cold(const MilpInstance& inst, const MilpOptions& opts) {
  return constraint_generation(inst, ConstraintSet(inst, {}), opts);
}

IdentifyResult identify_invariant_set(const MilpInstance& inst, const SolveOutcome& full,
                                      double full_ms, const MilpOptions& opts) {
  if (!full.optimal())
    throw Error("identify_invariant_set: '" + inst.name + "' full solve is " +
                to_string(full.status) + ", expected optimal");
  IdentifyResult out;
  out.full = full;
  out.full_ms = full_ms;
  out.binding = binding_set(inst, full.solution);
  out.trace = constraint_generation(inst, out.binding, opts);
  out.invariant = out.trace.final_set;
  if (std::abs(out.trace.outcome.objective - full.objective) > tol::objective_match)
    throw Error("identify_invariant_set: reduced objective " +
                std::to_string(out.trace.outcome.objective) + " does not match full objective " +
                std::to_string(full.objective) + " on '" + inst.name + "'");
  return out;
}

IdentifyResult identify_invariant_set(const MilpInstance& inst, const MilpOptions& opts) {
  const auto t0 = Clock::now();
  SolveOutcome full = solve_milp(inst, ConstraintSet(inst, inst.learnable_ids()), opts);
  const double full_ms = ms_since(t0);
  if (full.status == SolveStatus::Infeasible)
    throw Error("identify_invariant_set: '" + inst.name + "' is infeasible");
  if (full.status == SolveStatus::Unbounded)
    throw Error("identify_invariant_set: '" + inst.name + "' is unbounded");
  return identify_invariant_set(inst, full, full_ms, opts);
}

}  // namespace warmcg
