#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "warmcg/bench.hpp"
#include "warmcg/congen.hpp"
#include "warmcg/instances.hpp"
#include "warmcg/io.hpp"
#include "warmcg/learner.hpp"
#include "warmcg/lp.hpp"
#include "warmcg/milp.hpp"
#include "warmcg/model.hpp"

namespace py = pybind11;
using namespace warmcg;

// Long-running solver entry points drop the GIL; none of them call back into
// Python.
using nogil = py::call_guard<py::gil_scoped_release>;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constraint generation for MILPs with learned warm-start constraint sets";

  py::register_exception<Error>(m, "Error");

  // --- model ---------------------------------------------------------------

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Optimal", SolveStatus::Optimal)
      .value("Infeasible", SolveStatus::Infeasible)
      .value("Unbounded", SolveStatus::Unbounded);

  py::enum_<Sense>(m, "Sense")
      .value("LessEqual", Sense::LessEqual)
      .value("GreaterEqual", Sense::GreaterEqual)
      .value("Equal", Sense::Equal);

  py::class_<Term>(m, "Term")
      .def(py::init<int, double>(), py::arg("var"), py::arg("coef"))
      .def_readwrite("var", &Term::var)
      .def_readwrite("coef", &Term::coef)
      .def("__repr__",
           [](const Term& t) { return "Term(" + std::to_string(t.var) + ", " + std::to_string(t.coef) + ")"; });

  py::class_<Constraint>(m, "Constraint")
      .def(py::init<>())
      .def_readwrite("coeffs", &Constraint::coeffs)
      .def_readwrite("rhs", &Constraint::rhs)
      .def_readwrite("learnable", &Constraint::learnable)
      .def("value_at", [](const Constraint& c, const std::vector<double>& z) { return c.value_at(z); })
      .def("violation_at",
           [](const Constraint& c, const std::vector<double>& z) { return c.violation_at(z); });

  py::class_<RawConstraint>(m, "RawConstraint")
      .def(py::init<>())
      .def_readwrite("coeffs", &RawConstraint::coeffs)
      .def_readwrite("sense", &RawConstraint::sense)
      .def_readwrite("rhs", &RawConstraint::rhs)
      .def_readwrite("learnable", &RawConstraint::learnable);

  m.def("canonicalize", &warmcg::canonicalize, py::arg("raw"),
        "Rewrite a row into <= form (>= negated, = split into a <=/>= pair)");

  py::class_<VarBounds>(m, "VarBounds")
      .def(py::init<>())
      .def_readwrite("lo", &VarBounds::lo)
      .def_readwrite("hi", &VarBounds::hi);

  py::class_<MilpInstance>(m, "MilpInstance")
      .def(py::init<>())
      .def_readwrite("name", &MilpInstance::name)
      .def_readwrite("num_continuous", &MilpInstance::num_continuous)
      .def_readwrite("num_integer", &MilpInstance::num_integer)
      .def_readwrite("objective", &MilpInstance::objective)
      .def_readwrite("var_bounds", &MilpInstance::var_bounds)
      .def_readwrite("constraints", &MilpInstance::constraints)
      .def_readwrite("theta", &MilpInstance::theta)
      .def("num_vars", &MilpInstance::num_vars)
      .def("num_constraints", &MilpInstance::num_constraints)
      .def("is_integer_var", &MilpInstance::is_integer_var, py::arg("var"))
      .def("learnable_ids", &MilpInstance::learnable_ids)
      .def("non_learnable_ids", &MilpInstance::non_learnable_ids)
      .def("validate", &MilpInstance::validate)
      .def("__repr__", [](const MilpInstance& a) {
        return "MilpInstance('" + a.name + "', " + std::to_string(a.num_vars()) + " vars, " +
               std::to_string(a.num_constraints()) + " rows)";
      });

  py::class_<ConstraintSet>(m, "ConstraintSet")
      .def(py::init<const MilpInstance&, std::vector<int>>(), py::arg("instance"), py::arg("ids"))
      .def_property_readonly("instance_name", &ConstraintSet::instance_name)
      .def("members", &ConstraintSet::members)
      .def("__len__", &ConstraintSet::size)
      .def("__contains__", &ConstraintSet::contains)
      .def("contains", &ConstraintSet::contains, py::arg("id"))
      .def("insert", &ConstraintSet::insert, py::arg("id"))
      .def("learnable_members", &ConstraintSet::learnable_members, py::arg("instance"))
      .def("learnable_count", &ConstraintSet::learnable_count, py::arg("instance"))
      .def(py::self == py::self);

  py::class_<SolveOutcome>(m, "SolveOutcome")
      .def_readonly("status", &SolveOutcome::status)
      .def_readonly("solution", &SolveOutcome::solution)
      .def_readonly("objective", &SolveOutcome::objective)
      .def_readonly("ray", &SolveOutcome::ray)
      .def("optimal", &SolveOutcome::optimal)
      .def("__repr__", [](const SolveOutcome& o) {
        std::string r = "SolveOutcome(" + to_string(o.status);
        if (o.optimal()) r += ", objective=" + std::to_string(o.objective);
        return r + ")";
      });

  py::class_<Violation>(m, "Violation")
      .def_readonly("id", &Violation::id)
      .def_readonly("amount", &Violation::amount);

  m.def(
      "binding_set",
      [](const MilpInstance& inst, const std::vector<double>& z, double eps) {
        return binding_set(inst, z, eps);
      },
      py::arg("instance"), py::arg("z"), py::arg("eps") = tol::binding,
      "Rows active at z within eps");

  m.def(
      "max_violation",
      [](const MilpInstance& inst, const std::vector<double>& z, const ConstraintSet& active) {
        return max_violation(inst, z, active);
      },
      py::arg("instance"), py::arg("z"), py::arg("active"),
      "Most violated row outside the active set, or None");

  // --- solving ---------------------------------------------------------------

  py::class_<MilpOptions>(m, "MilpOptions")
      .def(py::init<>())
      .def_readwrite("node_limit", &MilpOptions::node_limit)
      .def_readwrite("gap_abs", &MilpOptions::gap_abs)
      .def_readwrite("bruteforce_grid", &MilpOptions::bruteforce_grid);

  m.def("solve_milp", &solve_milp, py::arg("instance"), py::arg("active"),
        py::arg("options") = MilpOptions{}, nogil(),
        "Branch-and-bound over the rows of the active set");
  m.def("solve_full", &solve_full, py::arg("instance"), py::arg("options") = MilpOptions{},
        nogil(), "Branch-and-bound with every row active");
  m.def("solve_bruteforce", &solve_bruteforce, py::arg("instance"), py::arg("active"),
        py::arg("options") = MilpOptions{}, nogil(),
        "Reference solve by enumerating every integer assignment");

  // --- constraint generation --------------------------------------------------

  py::class_<CgStep>(m, "CgStep")
      .def_readonly("iteration", &CgStep::iteration)
      .def_readonly("constraint_id", &CgStep::constraint_id)
      .def_readonly("amount", &CgStep::amount)
      .def_readonly("from_ray", &CgStep::from_ray);

  py::class_<CgTrace>(m, "CgTrace")
      .def_readonly("initial", &CgTrace::initial)
      .def_readonly("final_set", &CgTrace::final_set)
      .def_readonly("additions", &CgTrace::additions)
      .def_readonly("outcome", &CgTrace::outcome)
      .def_readonly("iterations", &CgTrace::iterations)
      .def_readonly("solve_ms", &CgTrace::solve_ms);

  m.def("constraint_generation", &constraint_generation, py::arg("instance"), py::arg("initial"),
        py::arg("options") = MilpOptions{}, nogil(),
        "Grow the initial set until no excluded row is violated");
  m.def("constraint_generation_cold", &constraint_generation_cold, py::arg("instance"),
        py::arg("options") = MilpOptions{}, nogil(),
        "Constraint generation from the non-learnable rows only");

  py::class_<IdentifyResult>(m, "IdentifyResult")
      .def_readonly("binding", &IdentifyResult::binding)
      .def_readonly("invariant", &IdentifyResult::invariant)
      .def_readonly("full", &IdentifyResult::full)
      .def_readonly("full_ms", &IdentifyResult::full_ms)
      .def_readonly("trace", &IdentifyResult::trace);

  m.def(
      "identify_invariant_set",
      [](const MilpInstance& inst, const MilpOptions& opts) {
        return identify_invariant_set(inst, opts);
      },
      py::arg("instance"), py::arg("options") = MilpOptions{}, nogil(),
      "Binding set of the full optimum grown to a set constraint generation cannot leave");

  // --- learner -----------------------------------------------------------------

  py::enum_<LabelSource>(m, "LabelSource")
      .value("Binding", LabelSource::Binding)
      .value("Invariant", LabelSource::Invariant);

  py::class_<LabelMatrix>(m, "LabelMatrix")
      .def_readonly("source", &LabelMatrix::source)
      .def_readonly("learnable_ids", &LabelMatrix::learnable_ids)
      .def_readonly("num_constraints", &LabelMatrix::num_constraints)
      .def_readonly("thetas", &LabelMatrix::thetas)
      .def_readonly("labels", &LabelMatrix::labels)
      .def("__len__", &LabelMatrix::size);

  m.def("build_labels", &build_labels, py::arg("family"), py::arg("sets"), py::arg("source"),
        "Per-instance membership labels over the learnable rows");
  m.def("drop_instance", &drop_instance, py::arg("data"), py::arg("skip"),
        "Leave-one-out view of a label matrix");

  py::class_<KnnModel>(m, "KnnModel")
      .def(py::init<LabelMatrix, int>(), py::arg("data"), py::arg("k"))
      .def_property_readonly("k", &KnnModel::k)
      .def_property_readonly("train_size", &KnnModel::train_size)
      .def("predict_ids",
           [](const KnnModel& model, const std::vector<double>& theta) {
             return model.predict_ids(theta);
           },
           py::arg("theta"), "Learnable ids voted in for a parameter vector")
      .def("predict", &KnnModel::predict, py::arg("query"),
           "Full warm-start set for a query instance");

  // --- instance generation -------------------------------------------------------

  py::class_<SyntheticConfig>(m, "SyntheticConfig")
      .def(py::init<>())
      .def_readwrite("n", &SyntheticConfig::n)
      .def_readwrite("m", &SyntheticConfig::m)
      .def_readwrite("T", &SyntheticConfig::T)
      .def_readwrite("seed", &SyntheticConfig::seed)
      .def_readwrite("prefix", &SyntheticConfig::prefix);

  py::class_<UcConfig>(m, "UcConfig")
      .def(py::init<>())
      .def_readwrite("n", &UcConfig::n)
      .def_readwrite("m", &UcConfig::m)
      .def_readwrite("T", &UcConfig::T)
      .def_readwrite("seed", &UcConfig::seed)
      .def_readwrite("prefix", &UcConfig::prefix);

  m.def("gen_toy", &gen_toy, "Four two-variable single-parameter instances");
  m.def("gen_synthetic", &gen_synthetic, py::arg("config") = SyntheticConfig{}, nogil(),
        "Family of coupling-row MILPs with per-instance right-hand sides");
  m.def("gen_uc", &gen_uc, py::arg("config") = UcConfig{}, nogil(),
        "Family of unit-commitment instances with per-instance nodal demand");

  // --- persistence -----------------------------------------------------------------

  m.def("instance_to_json", &instance_to_json, py::arg("instance"));
  m.def("instance_from_json", &instance_from_json, py::arg("text"));
  m.def("save_dataset", &save_dataset, py::arg("path"), py::arg("dataset"));
  m.def("load_dataset", &load_dataset, py::arg("path"));

  py::class_<IdentifiedSets>(m, "IdentifiedSets")
      .def(py::init<>())
      .def_readwrite("name", &IdentifiedSets::name)
      .def_readwrite("binding", &IdentifiedSets::binding)
      .def_readwrite("invariant", &IdentifiedSets::invariant);

  m.def("save_sets", &save_sets, py::arg("path"), py::arg("sets"));
  m.def("load_sets", &load_sets, py::arg("path"));
  m.def("align_sets", &align_sets, py::arg("dataset"), py::arg("sets"),
        "Pair every instance with its stored sets, validating names and ids");

  // --- benchmarking ------------------------------------------------------------------

  py::enum_<Method>(m, "Method")
      .value("Cg", Method::Cg)
      .value("BLearner", Method::BLearner)
      .value("SLearner", Method::SLearner)
      .value("Full", Method::Full);

  m.def("method_from_string", &method_from_string, py::arg("name"));

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("instance", &RunMetrics::instance)
      .def_readonly("method", &RunMetrics::method)
      .def_readonly("k", &RunMetrics::k)
      .def_readonly("constraint_count", &RunMetrics::constraint_count)
      .def_readonly("iterations", &RunMetrics::iterations)
      .def_readonly("tau_pred_ms", &RunMetrics::tau_pred_ms)
      .def_readonly("tau_cg_ms", &RunMetrics::tau_cg_ms)
      .def_readonly("tau_milp_ms", &RunMetrics::tau_milp_ms)
      .def_readonly("delta_pct", &RunMetrics::delta_pct)
      .def_readonly("objective", &RunMetrics::objective)
      .def_readonly("full_objective", &RunMetrics::full_objective)
      .def_readonly("match", &RunMetrics::match);

  py::class_<Quantiles>(m, "Quantiles")
      .def_readonly("min", &Quantiles::min)
      .def_readonly("q1", &Quantiles::q1)
      .def_readonly("median", &Quantiles::median)
      .def_readonly("q3", &Quantiles::q3)
      .def_readonly("max", &Quantiles::max);

  m.def("quantiles", &quantiles, py::arg("values"),
        "Five-number summary with linearly interpolated quartiles");

  py::class_<AggregateRow>(m, "AggregateRow")
      .def_readonly("method", &AggregateRow::method)
      .def_readonly("k", &AggregateRow::k)
      .def_readonly("runs", &AggregateRow::runs)
      .def_readonly("c_min", &AggregateRow::c_min)
      .def_readonly("c_max", &AggregateRow::c_max)
      .def_readonly("i_min", &AggregateRow::i_min)
      .def_readonly("i_max", &AggregateRow::i_max)
      .def_readonly("p1", &AggregateRow::p1)
      .def_readonly("i_mean", &AggregateRow::i_mean)
      .def_readonly("delta_mean", &AggregateRow::delta_mean)
      .def_readonly("c_q", &AggregateRow::c_q)
      .def_readonly("i_q", &AggregateRow::i_q)
      .def_readonly("delta_q", &AggregateRow::delta_q);

  py::class_<FamilyArtifacts>(m, "FamilyArtifacts")
      .def_readonly("full", &FamilyArtifacts::full)
      .def_readonly("full_ms", &FamilyArtifacts::full_ms)
      .def_readonly("binding", &FamilyArtifacts::binding)
      .def_readonly("invariant", &FamilyArtifacts::invariant)
      .def_readonly("has_sets", &FamilyArtifacts::has_sets);

  m.def("compute_artifacts", &compute_artifacts, py::arg("family"), py::arg("with_sets"),
        py::arg("options") = MilpOptions{}, py::arg("jobs") = 1, nogil(),
        "Timed full solves and identified sets, shared across methods and ks");

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("runs", &PipelineResult::runs)
      .def_readonly("aggregates", &PipelineResult::aggregates);

  m.def(
      "run_pipeline",
      [](const std::vector<MilpInstance>& family, Method method, const std::vector<int>& ks,
         const MilpOptions& opts, int jobs, const FamilyArtifacts* cache) {
        return run_pipeline(family, method, ks, opts, jobs, cache);
      },
      py::arg("family"), py::arg("method"), py::arg("ks") = std::vector<int>{},
      py::arg("options") = MilpOptions{}, py::arg("jobs") = 1, py::arg("cache") = nullptr,
      nogil(), "Leave-one-out evaluation of one method over a family");

  m.def("aggregate_groups", &aggregate_groups, py::arg("runs"));
  m.def("save_metrics_csv", &save_metrics_csv, py::arg("path"), py::arg("runs"));
  m.def("load_metrics_csv", &load_metrics_csv, py::arg("path"));
  m.def("metrics_csv_header", &metrics_csv_header);
  m.def("summary_to_json", &summary_to_json, py::arg("aggregates"));
}
