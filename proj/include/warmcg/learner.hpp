#pragma once

#include <cstdint>

#include "warmcg/model.hpp"

namespace warmcg {

enum class LabelSource { Binding, Invariant };

std::string to_string(LabelSource s);

// Per-instance membership labels over the learnable rows of a family:
// labels[t][p] is +1 when constraint learnable_ids[p] belongs to instance t's
// set, else -1. Every instance must share the family's row structure.
struct LabelMatrix {
  LabelSource source = LabelSource::Invariant;
  std::vector<int> learnable_ids;
  int num_constraints = 0;
  std::vector<std::vector<double>> thetas;
  std::vector<std::vector<std::int8_t>> labels;

  int size() const { return static_cast<int>(thetas.size()); }
};

// Builds labels from identified sets, one per instance. `sets` must be
// positionally aligned with `family` and name-matched.
LabelMatrix build_labels(const std::vector<MilpInstance>& family,
                         const std::vector<ConstraintSet>& sets, LabelSource source);

// Leave-one-out view: `data` minus instance `skip`.
LabelMatrix drop_instance(const LabelMatrix& data, int skip);

// k-nearest-neighbor multilabel classifier with conservative OR voting: a row
// is predicted in whenever at least one of the k nearest training points (by
// Euclidean distance on theta, ties to the lower training index) includes it.
class KnnModel {
 public:
  KnnModel(LabelMatrix data, int k);

  int k() const { return k_; }
  int train_size() const { return data_.size(); }
  const LabelMatrix& data() const { return data_; }

  // Learnable ids voted in for a query parameter vector, sorted ascending.
  std::vector<int> predict_ids(std::span<const double> theta) const;

  // Full warm-start set for a query instance (adds the non-learnable rows).
  ConstraintSet predict(const MilpInstance& query) const;

 private:
  LabelMatrix data_;
  int k_ = 0;
};

}  // namespace warmcg
