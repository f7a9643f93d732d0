#pragma once

#include "warmcg/instances.hpp"
#include "warmcg/model.hpp"

namespace warmcg::testing {

// Small random instance with every variable boxed and every integer range
// finite, so enumeration is always possible. Mixes feasible and infeasible
// draws; objectives may have zero entries. Deterministic in (seed, index).
MilpInstance random_small_instance(std::uint64_t seed, int index);

}  // namespace warmcg::testing
