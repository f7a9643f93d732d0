#include <doctest.h>

#include "warmcg/congen.hpp"
#include "warmcg/instances.hpp"

using namespace warmcg;

namespace {

// The two-variable family: rows in canonical order are
//   0: x <= 1.5   1: y <= 1.75   2: -x <= -0.5
//   3: -x - y <= -theta   4: -y <= 0   5: y <= 2.25
std::vector<int> learnables(const MilpInstance& inst, const ConstraintSet& set) {
  return set.learnable_members(inst);
}

}  // namespace

TEST_CASE("identification on the two-variable family") {
  auto family = gen_toy();
  REQUIRE(family.size() == 4);

  // theta = 1.0 and 1.25: only the lower x bound binds at (0.5, 1); the
  // invariant set additionally needs the y cap that keeps it bounded.
  for (int t : {0, 1}) {
    CAPTURE(t);
    IdentifyResult r = identify_invariant_set(family[t]);
    REQUIRE(r.full.status == SolveStatus::Optimal);
    CHECK(r.full.objective == doctest::Approx(-0.5));
    CHECK(r.full.solution[0] == doctest::Approx(0.5));
    CHECK(r.full.solution[1] == doctest::Approx(1.0));
    CHECK(learnables(family[t], r.binding) == std::vector<int>{2});
    CHECK(learnables(family[t], r.invariant) == std::vector<int>{1, 2});
  }

  // theta = 1.5: the coupling row becomes tight at the same optimum.
  IdentifyResult r = identify_invariant_set(family[2]);
  CHECK(learnables(family[2], r.binding) == std::vector<int>{2, 3});
  CHECK(learnables(family[2], r.invariant) == std::vector<int>{1, 2, 3});

  // Held-out theta = 1.3 behaves like the first two.
  IdentifyResult q = identify_invariant_set(family[3]);
  CHECK(learnables(family[3], q.binding) == std::vector<int>{2});
  CHECK(learnables(family[3], q.invariant) == std::vector<int>{1, 2});
}

TEST_CASE("cold generation adds rows exposed by unbounded rays first") {
  auto family = gen_toy();
  const MilpInstance& inst = family[3];

  CgTrace trace = constraint_generation_cold(inst);
  REQUIRE(trace.outcome.status == SolveStatus::Optimal);
  CHECK(trace.outcome.objective == doctest::Approx(-0.5));
  CHECK(trace.iterations == 3);
  REQUIRE(trace.additions.size() == 2);

  // With no rows the first ray runs along -x (lowest column first), and the
  // tie between the two rows blocking it goes to the lower id; the second ray
  // runs along +y and picks the tighter of the two y caps the same way.
  CHECK(trace.additions[0].constraint_id == 2);
  CHECK(trace.additions[0].from_ray);
  CHECK(trace.additions[1].constraint_id == 1);
  CHECK(trace.additions[1].from_ray);
  CHECK(learnables(inst, trace.final_set) == std::vector<int>{1, 2});
}

TEST_CASE("warm starts shrink the iteration count") {
  auto family = gen_toy();
  const MilpInstance& inst = family[3];

  // The invariant set is generation-closed: one solve, no additions.
  CgTrace warm = constraint_generation(inst, ConstraintSet(inst, {1, 2}));
  CHECK(warm.iterations == 1);
  CHECK(warm.additions.empty());
  CHECK(warm.outcome.objective == doctest::Approx(-0.5));

  // The binding set alone leaves the reduced problem unbounded once.
  CgTrace partial = constraint_generation(inst, ConstraintSet(inst, {2}));
  CHECK(partial.iterations == 2);
  REQUIRE(partial.additions.size() == 1);
  CHECK(partial.additions[0].constraint_id == 1);
  CHECK(partial.outcome.objective == doctest::Approx(-0.5));
}

TEST_CASE("violation-driven additions pick the most violated row") {
  // min -x - y over x,y in [0, 4] with learnable caps x + y <= 3 and x <= 1.
  MilpInstance inst;
  inst.name = "caps";
  inst.num_continuous = 2;
  inst.objective = {-1.0, -1.0};
  inst.var_bounds = {{0.0, 4.0}, {0.0, 4.0}};
  for (auto& row : canonicalize({{{0, 1.0}, {1, 1.0}}, Sense::LessEqual, 3.0, true}))
    inst.constraints.push_back(std::move(row));
  for (auto& row : canonicalize({{{0, 1.0}}, Sense::LessEqual, 1.0, true}))
    inst.constraints.push_back(std::move(row));
  inst.theta = {3.0};
  inst.validate();

  CgTrace trace = constraint_generation_cold(inst);
  REQUIRE(trace.outcome.status == SolveStatus::Optimal);
  // Unconstrained optimum (4, 4) violates row 0 by 5 and row 1 by 3.
  REQUIRE(!trace.additions.empty());
  CHECK(trace.additions[0].constraint_id == 0);
  CHECK(trace.additions[0].amount == doctest::Approx(5.0));
  CHECK(!trace.additions[0].from_ray);
  CHECK(trace.iterations == 1 + static_cast<int>(trace.additions.size()));
  CHECK(trace.outcome.objective == doctest::Approx(-3.0));
  // The final point satisfies every row, including any never added.
  CHECK(!max_violation(inst, trace.outcome.solution, trace.final_set).has_value());
}

TEST_CASE("a problem unbounded even with every row is an error") {
  MilpInstance inst;
  inst.name = "runaway";
  inst.num_continuous = 1;
  inst.objective = {-1.0};
  inst.var_bounds = {{0.0, std::nullopt}};
  for (auto& row : canonicalize({{{0, -1.0}}, Sense::LessEqual, 0.0, true}))
    inst.constraints.push_back(std::move(row));
  inst.theta = {0.0};
  inst.validate();

  CHECK_THROWS_WITH_AS(constraint_generation_cold(inst),
                       doctest::Contains("genuinely unbounded"), Error);
  CHECK_THROWS_WITH_AS(identify_invariant_set(inst), doctest::Contains("unbounded"), Error);
}

TEST_CASE("an infeasible problem is an error") {
  MilpInstance inst;
  inst.name = "conflict";
  inst.num_continuous = 1;
  inst.objective = {1.0};
  inst.var_bounds = {{0.0, 1.0}};
  for (auto& row : canonicalize({{{0, 1.0}}, Sense::GreaterEqual, 2.0, false}))
    inst.constraints.push_back(std::move(row));
  inst.theta = {2.0};
  inst.validate();

  CHECK_THROWS_WITH_AS(constraint_generation_cold(inst), doctest::Contains("infeasible"),
                       Error);
  CHECK_THROWS_WITH_AS(identify_invariant_set(inst), doctest::Contains("infeasible"), Error);
}

TEST_CASE("identification reuses a supplied full solve") {
  auto family = gen_toy();
  const MilpInstance& inst = family[0];

  SolveOutcome full = solve_full(inst);
  IdentifyResult r = identify_invariant_set(inst, full, 1.25);
  CHECK(r.full_ms == 1.25);
  CHECK(r.full.objective == full.objective);
  CHECK(learnables(inst, r.invariant) == std::vector<int>{1, 2});
}
