"""Operator means and relative operator entropies on SPD matrices, with a
randomized harness that machine-checks a catalog of positive-definite order
inequalities and reproduces their scalar spot-values."""

from .catalog import (
    InequalityCase,
    MarginReport,
    Params,
    catalog,
    catalog_with_duals,
    dual,
    evaluate,
    find_cases,
)
from .errors import (
    DomainError,
    HypothesisError,
    InvalidInput,
    InvalidWeight,
    NoDual,
    NumericalBreakdown,
    OperatorEntropyError,
    ReportError,
)
from .harness import (
    SuiteResult,
    integral_sweep,
    replay,
    run_all,
    run_suite,
    run_trial,
)
from .means import (
    OperatorPair,
    arithmetic_mean,
    dump_pair,
    generalized_entropy,
    geometric_mean,
    harmonic_mean,
    load_pair,
    natural_power_mean,
    quadrature_tsallis,
    relative_operator_entropy,
    tsallis_entropy,
)
from .sampler import SamplerConfig, commuting_pair, random_spd, sandwich_pair
from .spd_core import (
    LoewnerVerdict,
    SpdMatrix,
    dump_matrix,
    load_matrix,
    loewner_leq,
    mat_inv,
    mat_log,
    mat_power,
    mat_sqrt,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "HypothesisError",
    "InequalityCase",
    "InvalidInput",
    "InvalidWeight",
    "LoewnerVerdict",
    "MarginReport",
    "NoDual",
    "NumericalBreakdown",
    "OperatorEntropyError",
    "OperatorPair",
    "Params",
    "ReportError",
    "SamplerConfig",
    "SpdMatrix",
    "SuiteResult",
    "arithmetic_mean",
    "catalog",
    "catalog_with_duals",
    "commuting_pair",
    "dual",
    "dump_matrix",
    "dump_pair",
    "evaluate",
    "find_cases",
    "generalized_entropy",
    "geometric_mean",
    "harmonic_mean",
    "integral_sweep",
    "load_matrix",
    "load_pair",
    "loewner_leq",
    "mat_inv",
    "mat_log",
    "mat_power",
    "mat_sqrt",
    "natural_power_mean",
    "quadrature_tsallis",
    "random_spd",
    "relative_operator_entropy",
    "replay",
    "run_all",
    "run_suite",
    "run_trial",
    "sandwich_pair",
    "tsallis_entropy",
]
