"""Constraint generation for MILPs with learned warm-start constraint sets.

The heavy lifting lives in the compiled extension ``warmcg._core``; this
package re-exports its public surface.
"""

from ._core import (
    AggregateRow,
    Constraint,
    ConstraintSet,
    CgStep,
    CgTrace,
    Error,
    FamilyArtifacts,
    IdentifiedSets,
    IdentifyResult,
    KnnModel,
    LabelMatrix,
    LabelSource,
    Method,
    MilpInstance,
    MilpOptions,
    PipelineResult,
    Quantiles,
    RawConstraint,
    RunMetrics,
    Sense,
    SolveOutcome,
    SolveStatus,
    SyntheticConfig,
    Term,
    UcConfig,
    VarBounds,
    Violation,
    aggregate_groups,
    align_sets,
    binding_set,
    build_labels,
    canonicalize,
    compute_artifacts,
    constraint_generation,
    constraint_generation_cold,
    drop_instance,
    gen_synthetic,
    gen_toy,
    gen_uc,
    identify_invariant_set,
    instance_from_json,
    instance_to_json,
    load_dataset,
    load_metrics_csv,
    load_sets,
    max_violation,
    method_from_string,
    metrics_csv_header,
    quantiles,
    run_pipeline,
    save_dataset,
    save_metrics_csv,
    save_sets,
    solve_bruteforce,
    solve_full,
    solve_milp,
    summary_to_json,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
