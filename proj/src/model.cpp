#include "warmcg/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace warmcg {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

SolveOutcome SolveOutcome::make_optimal(std::vector<double> z, double obj) {
  SolveOutcome out;
  out.status = SolveStatus::Optimal;
  out.solution = std::move(z);
  out.objective = obj;
  return out;
}

SolveOutcome SolveOutcome::make_infeasible() {
  SolveOutcome out;
  out.status = SolveStatus::Infeasible;
  return out;
}

SolveOutcome SolveOutcome::make_unbounded(std::vector<double> direction) {
  SolveOutcome out;
  out.status = SolveStatus::Unbounded;
  out.ray = std::move(direction);
  return out;
}

double Constraint::value_at(std::span<const double> z) const {
  double v = 0.0;
  for (const Term& t : coeffs) v += t.coef * z[static_cast<size_t>(t.var)];
  return v;
}

std::vector<Constraint> canonicalize(const RawConstraint& raw) {
  if (!std::isfinite(raw.rhs)) throw Error("canonicalize: non-finite rhs");
  std::map<int, double> merged;
  for (const Term& t : raw.coeffs) {
    if (t.var < 0) throw Error("canonicalize: negative variable index");
    if (!std::isfinite(t.coef)) throw Error("canonicalize: non-finite coefficient");
    merged[t.var] += t.coef;
  }
  std::vector<Term> terms;
  for (const auto& [var, coef] : merged)
    if (coef != 0.0) terms.push_back({var, coef});

  auto flipped = [&terms] {
    std::vector<Term> neg = terms;
    for (Term& t : neg) t.coef = -t.coef;
    return neg;
  };
  auto negated = [](double v) { return v == 0.0 ? 0.0 : -v; };  // avoid -0.0

  std::vector<Constraint> rows;
  switch (raw.sense) {
    case Sense::LessEqual:
      rows.push_back({terms, raw.rhs, raw.learnable});
      break;
    case Sense::GreaterEqual:
      rows.push_back({flipped(), negated(raw.rhs), raw.learnable});
      break;
    case Sense::Equal:
      rows.push_back({terms, raw.rhs, raw.learnable});
      rows.push_back({flipped(), negated(raw.rhs), raw.learnable});
      break;
  }
  return rows;
}

std::vector<int> MilpInstance::learnable_ids() const {
  std::vector<int> ids;
  for (int j = 0; j < num_constraints(); ++j)
    if (constraints[static_cast<size_t>(j)].learnable) ids.push_back(j);
  return ids;
}

std::vector<int> MilpInstance::non_learnable_ids() const {
  std::vector<int> ids;
  for (int j = 0; j < num_constraints(); ++j)
    if (!constraints[static_cast<size_t>(j)].learnable) ids.push_back(j);
  return ids;
}

void MilpInstance::validate() const {
  if (name.empty()) throw Error("instance: empty name");
  if (num_continuous < 0 || num_integer < 0 || num_vars() <= 0)
    throw Error("instance '" + name + "': bad variable counts");
  const size_t nv = static_cast<size_t>(num_vars());
  if (objective.size() != nv)
    throw Error("instance '" + name + "': objective size mismatch");
  if (var_bounds.size() != nv)
    throw Error("instance '" + name + "': var_bounds size mismatch");
  for (double c : objective)
    if (!std::isfinite(c)) throw Error("instance '" + name + "': non-finite objective");
  for (const VarBounds& b : var_bounds) {
    if (b.lo && !std::isfinite(*b.lo)) throw Error("instance '" + name + "': non-finite lower bound");
    if (b.hi && !std::isfinite(*b.hi)) throw Error("instance '" + name + "': non-finite upper bound");
    if (b.lo && b.hi && *b.lo > *b.hi) throw Error("instance '" + name + "': crossed bounds");
  }
  for (const Constraint& c : constraints) {
    if (!std::isfinite(c.rhs)) throw Error("instance '" + name + "': non-finite rhs");
    int prev = -1;
    for (const Term& t : c.coeffs) {
      if (t.var <= prev) throw Error("instance '" + name + "': row indices not strictly increasing");
      if (t.var >= num_vars()) throw Error("instance '" + name + "': row index out of range");
      if (t.coef == 0.0 || !std::isfinite(t.coef))
        throw Error("instance '" + name + "': bad row coefficient");
      prev = t.var;
    }
  }
  for (double v : theta)
    if (!std::isfinite(v)) throw Error("instance '" + name + "': non-finite theta");
}

ConstraintSet::ConstraintSet(const MilpInstance& inst, std::vector<int> ids)
    : instance_(inst.name) {
  ids_ = inst.non_learnable_ids();
  for (int id : ids) {
    if (id < 0 || id >= inst.num_constraints())
      throw Error("constraint set: id " + std::to_string(id) + " out of range for '" +
                  inst.name + "'");
    insert(id);
  }
}

bool ConstraintSet::contains(int id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

void ConstraintSet::insert(int id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

std::vector<int> ConstraintSet::learnable_members(const MilpInstance& inst) const {
  std::vector<int> out;
  for (int id : ids_)
    if (inst.constraints[static_cast<size_t>(id)].learnable) out.push_back(id);
  return out;
}

int ConstraintSet::learnable_count(const MilpInstance& inst) const {
  return static_cast<int>(learnable_members(inst).size());
}

ConstraintSet binding_set(const MilpInstance& inst, std::span<const double> z, double eps) {
  if (z.size() != static_cast<size_t>(inst.num_vars()))
    throw Error("binding_set: point dimension mismatch");
  std::vector<int> ids;
  for (int j = 0; j < inst.num_constraints(); ++j) {
    const Constraint& c = inst.constraints[static_cast<size_t>(j)];
    if (std::abs(c.violation_at(z)) <= eps) ids.push_back(j);
  }
  return ConstraintSet(inst, std::move(ids));
}

std::optional<Violation> max_violation(const MilpInstance& inst, std::span<const double> z,
                                       const ConstraintSet& active) {
  if (z.size() != static_cast<size_t>(inst.num_vars()))
    throw Error("max_violation: point dimension mismatch");
  Violation best;
  for (int j = 0; j < inst.num_constraints(); ++j) {
    if (active.contains(j)) continue;
    const double v = inst.constraints[static_cast<size_t>(j)].violation_at(z);
    if (v > best.amount) best = {j, v};
  }
  if (best.id < 0 || best.amount <= tol::feasibility) return std::nullopt;
  return best;
}

}  // namespace warmcg
