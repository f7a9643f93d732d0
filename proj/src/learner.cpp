#include "warmcg/learner.hpp"

#include <algorithm>
#include <cmath>

namespace warmcg {

std::string to_string(LabelSource s) {
  return s == LabelSource::Binding ? "binding" : "invariant";
}

LabelMatrix build_labels(const std::vector<MilpInstance>& family,
                         const std::vector<ConstraintSet>& sets, LabelSource source) {
  if (family.empty()) throw Error("build_labels: empty family");
  if (family.size() != sets.size())
    throw Error("build_labels: " + std::to_string(family.size()) + " instances vs " +
                std::to_string(sets.size()) + " sets");

  LabelMatrix out;
  out.source = source;
  out.learnable_ids = family.front().learnable_ids();
  out.num_constraints = family.front().num_constraints();
  const size_t dim = family.front().theta.size();
  if (dim == 0) throw Error("build_labels: instances carry no parameter vector");

  for (size_t t = 0; t < family.size(); ++t) {
    const MilpInstance& inst = family[t];
    if (inst.theta.size() != dim)
      throw Error("build_labels: theta dimension mismatch at '" + inst.name + "'");
    if (inst.learnable_ids() != out.learnable_ids ||
        inst.num_constraints() != out.num_constraints)
      throw Error("build_labels: row structure mismatch at '" + inst.name + "'");
    if (sets[t].instance_name() != inst.name)
      throw Error("build_labels: set for '" + sets[t].instance_name() +
                  "' paired with instance '" + inst.name + "'");
    std::vector<std::int8_t> row(out.learnable_ids.size());
    for (size_t p = 0; p < out.learnable_ids.size(); ++p)
      row[p] = sets[t].contains(out.learnable_ids[p]) ? +1 : -1;
    out.thetas.push_back(inst.theta);
    out.labels.push_back(std::move(row));
  }
  return out;
}

LabelMatrix drop_instance(const LabelMatrix& data, int skip) {
  if (skip < 0 || skip >= data.size()) throw Error("drop_instance: index out of range");
  LabelMatrix out;
  out.source = data.source;
  out.learnable_ids = data.learnable_ids;
  out.num_constraints = data.num_constraints;
  for (int t = 0; t < data.size(); ++t) {
    if (t == skip) continue;
    out.thetas.push_back(data.thetas[t]);
    out.labels.push_back(data.labels[t]);
  }
  return out;
}

KnnModel::KnnModel(LabelMatrix data, int k) : data_(std::move(data)), k_(k) {
  if (data_.size() == 0) throw Error("knn: empty training data");
  if (k_ < 1 || k_ > data_.size())
    throw Error("knn: k=" + std::to_string(k_) + " outside [1, " +
                std::to_string(data_.size()) + "]");
}

std::vector<int> KnnModel::predict_ids(std::span<const double> theta) const {
  const size_t dim = data_.thetas.front().size();
  if (theta.size() != dim) throw Error("knn: query dimension mismatch");

  // Squared distances order the same as distances; ties go to the lower index.
  std::vector<std::pair<double, int>> order(data_.size());
  for (int t = 0; t < data_.size(); ++t) {
    double d2 = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      const double d = data_.thetas[t][i] - theta[i];
      d2 += d * d;
    }
    order[t] = {d2, t};
  }
  std::partial_sort(order.begin(), order.begin() + k_, order.end());

  // OR vote: one positive neighbor suffices.
  std::vector<int> ids;
  for (size_t p = 0; p < data_.learnable_ids.size(); ++p) {
    for (int u = 0; u < k_; ++u) {
      if (data_.labels[order[u].second][p] > 0) {
        ids.push_back(data_.learnable_ids[p]);
        break;
      }
    }
  }
  return ids;
}

ConstraintSet KnnModel::predict(const MilpInstance& query) const {
  return ConstraintSet(query, predict_ids(query.theta));
}

}  // namespace warmcg
