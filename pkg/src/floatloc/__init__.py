"""Max-min placement of floating head locations between fixed bumps."""

__version__ = "0.1.0"

from floatloc.drift import (
    DriftParams,
    DriftTrace,
    drift_response,
    effective_stiffness,
    fit_disturbance,
    max_drift,
    simulate_drift,
    wakeup_period,
)
from floatloc.estimators import FloatingLocationOptimizer
from floatloc.heuristic import (
    Allocation,
    RawAllocation,
    adjust,
    eliminate_and_round,
    initial_allocation_raw,
    optimize,
    place,
    spacing,
)
from floatloc.layout import (
    Bracket,
    BracketSet,
    Instance,
    InvalidInstanceError,
    Placement,
    evaluate_objective,
    partition,
)
from floatloc.oracle import (
    BaselineSample,
    OracleResult,
    brute_force_optimum,
    exact_optimum,
    feasible,
    quantile_of,
    random_baseline,
)
from floatloc.worstcase import (
    WorstCaseReport,
    adversarial_instance,
    verify_worst_case,
    worst_case_value,
)

__all__ = [
    "Allocation",
    "BaselineSample",
    "Bracket",
    "BracketSet",
    "DriftParams",
    "DriftTrace",
    "FloatingLocationOptimizer",
    "Instance",
    "InvalidInstanceError",
    "OracleResult",
    "Placement",
    "RawAllocation",
    "WorstCaseReport",
    "adjust",
    "adversarial_instance",
    "brute_force_optimum",
    "drift_response",
    "effective_stiffness",
    "eliminate_and_round",
    "evaluate_objective",
    "exact_optimum",
    "feasible",
    "fit_disturbance",
    "initial_allocation_raw",
    "max_drift",
    "optimize",
    "partition",
    "place",
    "quantile_of",
    "random_baseline",
    "simulate_drift",
    "spacing",
    "verify_worst_case",
    "wakeup_period",
    "worst_case_value",
]
