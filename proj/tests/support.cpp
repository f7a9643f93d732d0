#include "support.hpp"

#include <cmath>

namespace warmcg::testing {

MilpInstance random_small_instance(std::uint64_t seed, int index) {
  Rng rng(substream(seed, {100, static_cast<std::uint64_t>(index)}));

  MilpInstance inst;
  inst.name = "rnd-" + std::to_string(index);
  inst.num_continuous = static_cast<int>(rng.uniform_int(0, 3));
  inst.num_integer = static_cast<int>(rng.uniform_int(1, 5));
  const int n = inst.num_vars();

  for (int v = 0; v < n; ++v) {
    VarBounds vb;
    if (inst.is_integer_var(v)) {
      const long lo = rng.uniform_int(-3, 0);
      vb.lo = static_cast<double>(lo);
      vb.hi = static_cast<double>(lo + rng.uniform_int(1, 4));
    } else {
      const double lo = rng.uniform(-5.0, 0.0);
      vb.lo = lo;
      vb.hi = lo + rng.uniform(1.0, 10.0);
    }
    inst.var_bounds.push_back(vb);
  }

  inst.objective.resize(n);
  for (double& c : inst.objective) c = static_cast<double>(rng.uniform_int(-5, 5));

  // Rows are anchored near a random box point so that most draws are feasible
  // while a negative slack keeps genuinely infeasible instances in the mix.
  // Equalities anchor at an integral point instead, otherwise integer-only
  // equalities would almost never be satisfiable.
  std::vector<double> anchor(n), lattice(n);
  for (int v = 0; v < n; ++v) {
    anchor[v] = *inst.var_bounds[v].lo +
                rng.uniform() * (*inst.var_bounds[v].hi - *inst.var_bounds[v].lo);
    lattice[v] = inst.is_integer_var(v) ? std::round(anchor[v]) : anchor[v];
  }

  const int rows = static_cast<int>(rng.uniform_int(1, 6));
  for (int r = 0; r < rows; ++r) {
    RawConstraint raw;
    double at_anchor = 0.0, at_lattice = 0.0;
    for (int v = 0; v < n; ++v) {
      const double coef = static_cast<double>(rng.uniform_int(-4, 4));
      if (coef == 0.0) continue;
      raw.coeffs.push_back({v, coef});
      at_anchor += coef * anchor[v];
      at_lattice += coef * lattice[v];
    }
    if (raw.coeffs.empty()) continue;
    const long pick = rng.uniform_int(0, 2);
    raw.sense = pick == 0 ? Sense::LessEqual : pick == 1 ? Sense::GreaterEqual : Sense::Equal;
    const double slack = rng.uniform(-2.0, 6.0);
    if (raw.sense == Sense::Equal) {
      raw.rhs = at_lattice;
    } else if (raw.sense == Sense::GreaterEqual) {
      raw.rhs = at_anchor - slack;
    } else {
      raw.rhs = at_anchor + slack;
    }
    raw.learnable = rng.uniform() < 0.5;
    for (auto& row : canonicalize(raw)) inst.constraints.push_back(std::move(row));
  }

  inst.theta = {rng.uniform()};
  inst.validate();
  return inst;
}

}  // namespace warmcg::testing
