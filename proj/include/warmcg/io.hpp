#pragma once

#include <utility>

#include "warmcg/model.hpp"

namespace warmcg {

// One-line JSON with alphabetically sorted keys; numbers round-trip exactly,
// so serialization is byte-deterministic.
std::string instance_to_json(const MilpInstance& inst);
MilpInstance instance_from_json(const std::string& text);

// Datasets are JSON Lines, one instance per line. Loading validates every
// instance and rejects duplicate names.
void save_dataset(const std::string& path, const std::vector<MilpInstance>& dataset);
std::vector<MilpInstance> load_dataset(const std::string& path);

// Identified constraint sets for one instance, stored as sorted member ids.
struct IdentifiedSets {
  std::string name;
  std::vector<int> binding;
  std::vector<int> invariant;
};

void save_sets(const std::string& path, const std::vector<IdentifiedSets>& sets);
std::vector<IdentifiedSets> load_sets(const std::string& path);

// Pairs every dataset instance with its (binding, invariant) sets by name,
// validating ids against the instance. Missing or alien names are errors.
std::vector<std::pair<ConstraintSet, ConstraintSet>> align_sets(
    const std::vector<MilpInstance>& dataset, const std::vector<IdentifiedSets>& sets);

}  // namespace warmcg
