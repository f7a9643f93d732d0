#pragma once

#include <cstdint>
#include <random>

#include "warmcg/model.hpp"

namespace warmcg {

// Deterministic random source. The engine is the standardized mt19937_64;
// the value transforms are hand-rolled because the standard distributions are
// implementation-defined and generated datasets must be byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double a, double b);
  long uniform_int(long lo, long hi);  // inclusive
  double normal(double mean, double sd);

 private:
  std::mt19937_64 eng_;
};

// Decorrelated child seed for a named position in the generation process, so
// resampling one instance never shifts any other's stream.
std::uint64_t substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

// Four single-parameter instances on two variables (one integer): three
// training values of the right-hand-side parameter plus one held-out query.
std::vector<MilpInstance> gen_toy();

struct SyntheticConfig {
  int n = 50;  // continuous variables, each with a matching on/off binary
  int m = 25;  // learnable coupling rows
  int T = 200;
  std::uint64_t seed = 7;
  std::string prefix = "syn";
};

// Family of coupling-row MILPs: shared coefficients, costs, and on/off value
// ranges; per-instance right-hand sides (theta). Every emitted instance is
// screened to be feasible and bounded; infeasible draws are resampled.
std::vector<MilpInstance> gen_synthetic(const SyntheticConfig& cfg);

struct UcConfig {
  int n = 24;  // generators, one per network node
  int m = 30;  // transmission lines
  int T = 240;
  std::uint64_t seed = 11;
  std::string prefix = "uc";
};

// Family of unit-commitment instances on a random connected network: fixed
// costs, generation limits, topology, and line ratings; per-instance nodal
// demand (theta) following a daily profile. Same feasibility screening.
std::vector<MilpInstance> gen_uc(const UcConfig& cfg);

}  // namespace warmcg
