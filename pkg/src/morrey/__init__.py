"""Morrey-type norms and the von Neumann-Jordan, James and Dunkl-Williams constants."""

from .constants import (
    ConstantReport,
    Continuous1DSpace,
    DiscreteSpace,
    LocalRadialSpace,
    assert_envelopes,
    dw_functional,
    evaluate,
    james_functional,
    nj_functional,
    search_lower_bound,
)
from .errors import (
    BadRange,
    BothZero,
    DegenerateParams,
    DimensionMismatch,
    Divergent,
    EmptySequence,
    EqualVectors,
    IncompatiblePieces,
    InputTooLarge,
    MalformedInput,
    MorreyError,
    ThresholdViolated,
    Unbounded,
    ZeroVector,
)
from .lattice import (
    NormResult,
    SparseSequence,
    Window,
    WindowValue,
    brute_force_norm,
    candidate_windows,
    combine,
    discrete_norm,
    window_cardinality,
    window_value,
)
from .params import MorreyParams
from .radial import (
    IntervalBall,
    NormEstimate,
    OptimizerConfig,
    PiecewisePowerFn,
    ball_value_1d,
    combine_fn,
    global_norm_1d,
    local_norm_radial,
    piece_integral,
    scale,
)
from .witnesses import (
    continuous_witness_family,
    discrete_witness_pair,
    dw_couple_continuous,
    dw_couple_discrete,
    dw_ratio,
    minimal_even_n,
)

__version__ = "0.1.0"

__all__ = [
    "BadRange",
    "BothZero",
    "ConstantReport",
    "Continuous1DSpace",
    "DegenerateParams",
    "DimensionMismatch",
    "DiscreteSpace",
    "Divergent",
    "EmptySequence",
    "EqualVectors",
    "IncompatiblePieces",
    "InputTooLarge",
    "IntervalBall",
    "LocalRadialSpace",
    "MalformedInput",
    "MorreyError",
    "MorreyParams",
    "NormEstimate",
    "NormResult",
    "OptimizerConfig",
    "PiecewisePowerFn",
    "SparseSequence",
    "ThresholdViolated",
    "Unbounded",
    "Window",
    "WindowValue",
    "ZeroVector",
    "assert_envelopes",
    "ball_value_1d",
    "brute_force_norm",
    "candidate_windows",
    "combine",
    "combine_fn",
    "continuous_witness_family",
    "discrete_norm",
    "discrete_witness_pair",
    "dw_couple_continuous",
    "dw_couple_discrete",
    "dw_functional",
    "dw_ratio",
    "evaluate",
    "global_norm_1d",
    "james_functional",
    "local_norm_radial",
    "minimal_even_n",
    "nj_functional",
    "piece_integral",
    "scale",
    "search_lower_bound",
    "window_cardinality",
    "window_value",
]
