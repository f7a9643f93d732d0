#pragma once

#include "warmcg/congen.hpp"
#include "warmcg/learner.hpp"
#include "warmcg/model.hpp"

namespace warmcg {

enum class Method { Cg, BLearner, SLearner, Full };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

// One evaluated (instance, method, k) run. `k` is 0 for methods without a
// neighbor count. Objectives must agree with the full solve; the pipeline
// aborts on any mismatch rather than report a wrong speedup.
struct RunMetrics {
  std::string instance;
  Method method = Method::Cg;
  int k = 0;
  int constraint_count = 0;  // learnable rows in the final reduced set
  int iterations = 0;        // reduced-problem solves
  double tau_pred_ms = 0.0;
  double tau_cg_ms = 0.0;
  double tau_milp_ms = 0.0;
  double delta_pct = 0.0;  // 100 * (tau_pred + tau_cg) / tau_milp
  double objective = 0.0;
  double full_objective = 0.0;
  bool match = false;
};

struct Quantiles {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Five-number summary with linearly interpolated quartiles.
Quantiles quantiles(std::vector<double> values);

struct AggregateRow {
  Method method = Method::Cg;
  int k = 0;
  int runs = 0;
  int c_min = 0, c_max = 0;
  int i_min = 0, i_max = 0;
  double p1 = 0.0;      // % of runs that needed exactly one reduced solve
  double i_mean = 0.0;  // mean reduced solves per run
  double delta_mean = 0.0;
  Quantiles c_q, i_q, delta_q;
};

// Fold-independent per-instance offline work, shared across methods and ks:
// the timed full solves and (optionally) the identified sets.
struct FamilyArtifacts {
  std::vector<SolveOutcome> full;
  std::vector<double> full_ms;
  std::vector<ConstraintSet> binding;
  std::vector<ConstraintSet> invariant;
  bool has_sets = false;
};

FamilyArtifacts compute_artifacts(const std::vector<MilpInstance>& family, bool with_sets,
                                  const MilpOptions& opts = {}, int jobs = 1);

struct PipelineResult {
  std::vector<RunMetrics> runs;
  std::vector<AggregateRow> aggregates;
};

// Leave-one-out evaluation of one method over a family: learner methods get
// one arm per k (trained on the other instances each fold); cg and full
// ignore `ks`. `cache` reuses precomputed artifacts.
PipelineResult run_pipeline(const std::vector<MilpInstance>& family, Method method,
                            const std::vector<int>& ks, const MilpOptions& opts = {},
                            int jobs = 1, const FamilyArtifacts* cache = nullptr);

// Groups runs by (method, k) in first-appearance order.
std::vector<AggregateRow> aggregate_groups(const std::vector<RunMetrics>& runs);

void save_metrics_csv(const std::string& path, const std::vector<RunMetrics>& runs);
std::vector<RunMetrics> load_metrics_csv(const std::string& path);

std::string metrics_csv_header();
std::string summary_to_json(const std::vector<AggregateRow>& aggregates);

}  // namespace warmcg
