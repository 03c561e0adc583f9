"""Odd polynomials that fail to approximate odd functions, verified exactly.

Builds a Hilbert space of holomorphic functions on the disk from a
biorthogonal system in l^2, the witnesses f (odd) and g (orthogonal to
every odd monomial) with <f, g> = 1, and certified distance tables.
"""

from .counterexample import (
    SummabilityVector,
    WitnessPair,
    apply_summability,
    check_f_odd,
    check_g_perp_odd,
    headline_contrast,
    make_witnesses,
    odd_span_distance_bound,
    partial_sum,
    partial_sum_norm_growth,
    summability_failure_report,
)
from .mbasis import SequenceCache, SparseVec, WeightSpec, dot, x_vec, y_vec
from .projection import ConditioningError, ProjectionResult, project
from .scalars import APPROX, EXACT, Surd, ScalarModeError, sqrt_rational
from .space import HFunction, Space
from .variants import SupportSpec, build_sigma, fourier_counterexample, fourier_space, supported_span_distance

__version__ = "0.1.0"

__all__ = [
    "APPROX", "EXACT", "ConditioningError", "HFunction", "ProjectionResult", "ScalarModeError",
    "SequenceCache", "Space", "SparseVec", "SummabilityVector", "SupportSpec", "Surd", "WeightSpec",
    "WitnessPair", "apply_summability", "build_sigma", "check_f_odd", "check_g_perp_odd", "dot",
    "fourier_counterexample", "fourier_space", "headline_contrast", "make_witnesses",
    "odd_span_distance_bound", "partial_sum", "partial_sum_norm_growth", "project", "sqrt_rational",
    "summability_failure_report", "supported_span_distance", "x_vec", "y_vec", "__version__",
]
