"""Inequality families and joint-probability feasibility for temporal
correlation data from dichotomic sequential measurements."""

from .core import (
    CorrelatorSet,
    DimensionError,
    JointDistribution,
    LgError,
    MarginalError,
    MissingCorrelatorError,
    MomentSpec,
    OracleError,
    SignVector,
    ValidationError,
    chain_pairs,
    complete_pairs,
    distribution_from_moments,
    marginalize,
    moments_from_distribution,
    pairwise_probability,
)
from .inequalities import (
    InequalityFamily,
    LinearInequality,
    distinct_under_equal_spacing,
    evaluate,
    lg_family,
    max_violation,
    ngon_family,
    three_time_complete,
    two_time_complete,
)
from .feasibility import (
    ConjectureReport,
    FeasibilityVerdict,
    Interval,
    c1n_interval,
    c1n_intervals,
    conjecture_check,
    d_interval,
    fine_build,
    fine_build_from_tables,
    lp_feasible,
    lp_feasible_from_spec,
    symmetric_e_feasible,
)
from .spinmodel import (
    SpinSweepConfig,
    SweepResult,
    cosine_correlators,
    nu_convergence,
    nu_versus_n,
    sweep,
)
from .cltvolume import (
    VolumeEstimate,
    clt_violation_fraction,
    erf,
    exact_violation_fraction,
    mc_violation_fraction,
    v_lg,
    v_ngon,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelatorSet",
    "ConjectureReport",
    "DimensionError",
    "FeasibilityVerdict",
    "InequalityFamily",
    "Interval",
    "JointDistribution",
    "LgError",
    "LinearInequality",
    "MarginalError",
    "MissingCorrelatorError",
    "MomentSpec",
    "OracleError",
    "SignVector",
    "SpinSweepConfig",
    "SweepResult",
    "ValidationError",
    "VolumeEstimate",
    "c1n_interval",
    "c1n_intervals",
    "chain_pairs",
    "clt_violation_fraction",
    "complete_pairs",
    "conjecture_check",
    "cosine_correlators",
    "d_interval",
    "distinct_under_equal_spacing",
    "distribution_from_moments",
    "erf",
    "evaluate",
    "exact_violation_fraction",
    "fine_build",
    "fine_build_from_tables",
    "lg_family",
    "lp_feasible",
    "lp_feasible_from_spec",
    "marginalize",
    "max_violation",
    "mc_violation_fraction",
    "moments_from_distribution",
    "ngon_family",
    "nu_convergence",
    "nu_versus_n",
    "pairwise_probability",
    "sweep",
    "symmetric_e_feasible",
    "three_time_complete",
    "two_time_complete",
    "v_lg",
    "v_ngon",
]
