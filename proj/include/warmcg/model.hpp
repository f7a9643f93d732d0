#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace warmcg {

// All numeric tolerances used across the library, in one place.
namespace tol {
inline constexpr double feasibility = 1e-6;      // row violation threshold
inline constexpr double binding = 1e-6;          // |a'z - b| for binding classification
inline constexpr double integrality = 1e-6;      // distance to nearest integer
inline constexpr double objective_match = 1e-6;  // reduced vs full objective agreement
inline constexpr double mip_gap = 1e-9;          // absolute branch-and-bound gap
inline constexpr double lp_pivot = 1e-9;         // simplex pivot / reduced-cost threshold
inline constexpr double lp_phase1 = 1e-8;        // residual infeasibility after phase 1
inline constexpr double ray = 1e-9;              // positive ray-coefficient threshold
}  // namespace tol

// Library-wide error type. Anything that breaks a documented contract throws this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

std::string to_string(SolveStatus s);

// Result of solving a (sub)problem. `solution`/`objective` are meaningful only
// when Optimal, `ray` only when Unbounded.
struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> solution;
  double objective = 0.0;
  std::vector<double> ray;

  bool optimal() const { return status == SolveStatus::Optimal; }

  static SolveOutcome make_optimal(std::vector<double> z, double obj);
  static SolveOutcome make_infeasible();
  static SolveOutcome make_unbounded(std::vector<double> direction);
};

// One nonzero coefficient of a row.
struct Term {
  int var = 0;
  double coef = 0.0;
};

// A canonical row: coeffs . z <= rhs. Term indices are strictly increasing
// and no zero coefficients are stored.
struct Constraint {
  std::vector<Term> coeffs;
  double rhs = 0.0;
  bool learnable = false;

  double value_at(std::span<const double> z) const;
  double violation_at(std::span<const double> z) const { return value_at(z) - rhs; }
};

enum class Sense { LessEqual, GreaterEqual, Equal };

// A row as written by a modeler, before canonicalization.
struct RawConstraint {
  std::vector<Term> coeffs;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  bool learnable = false;
};

// Rewrites a row into <= form: >= is negated, = becomes two rows (<= first).
// Merges duplicate indices, drops zeros, sorts indices, rejects non-finite data.
std::vector<Constraint> canonicalize(const RawConstraint& raw);

// Optional variable bounds; absent means unbounded on that side.
struct VarBounds {
  std::optional<double> lo;
  std::optional<double> hi;
};

// A parametric instance. Variables are ordered continuous-first: indices
// [0, num_continuous) are continuous, [num_continuous, num_vars()) integer.
struct MilpInstance {
  std::string name;
  int num_continuous = 0;
  int num_integer = 0;
  std::vector<double> objective;
  std::vector<VarBounds> var_bounds;
  std::vector<Constraint> constraints;
  std::vector<double> theta;

  int num_vars() const { return num_continuous + num_integer; }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  bool is_integer_var(int v) const { return v >= num_continuous; }

  std::vector<int> learnable_ids() const;
  std::vector<int> non_learnable_ids() const;

  // Throws Error if any structural invariant is broken (sizes, indices,
  // finiteness, bound ordering).
  void validate() const;
};

// A subset of an instance's rows. Always contains every non-learnable row of
// the instance it was built for; members are kept sorted ascending.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(const MilpInstance& inst, std::vector<int> ids);

  const std::string& instance_name() const { return instance_; }
  const std::vector<int>& members() const { return ids_; }
  int size() const { return static_cast<int>(ids_.size()); }
  bool contains(int id) const;
  void insert(int id);

  // Members that are learnable rows of `inst`.
  std::vector<int> learnable_members(const MilpInstance& inst) const;
  int learnable_count(const MilpInstance& inst) const;

  bool operator==(const ConstraintSet& o) const { return ids_ == o.ids_; }

 private:
  std::string instance_;
  std::vector<int> ids_;
};

// Rows of `inst` active at z within eps: |a'z - b| <= eps.
ConstraintSet binding_set(const MilpInstance& inst, std::span<const double> z,
                          double eps = tol::binding);

struct Violation {
  int id = -1;
  double amount = 0.0;
};

// Most violated row of `inst` outside `active` at z, ties broken towards the
// lowest id. Empty if no excluded row is violated beyond the feasibility
// tolerance.
std::optional<Violation> max_violation(const MilpInstance& inst, std::span<const double> z,
                                       const ConstraintSet& active);

}  // namespace warmcg
