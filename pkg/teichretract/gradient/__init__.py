"""
Length differentials, the model metric and the retraction vector field.
"""

from ._vectors import Covector, TangentVector, pair
from ._metric import MetricModel, METRIC_KINDS, TWIST_FRAMES
from ._field import (
    FieldMode, FieldEvaluation, length_differential, gram_matrix,
    root_length_gram, solve_kappa, evaluate_field, vector_field_V,
    directional_derivative, field_diagnostics
)

__all__ = [
    "Covector",
    "TangentVector",
    "pair",
    "MetricModel",
    "METRIC_KINDS",
    "TWIST_FRAMES",
    "FieldMode",
    "FieldEvaluation",
    "length_differential",
    "gram_matrix",
    "root_length_gram",
    "solve_kappa",
    "evaluate_field",
    "vector_field_V",
    "directional_derivative",
    "field_diagnostics",
]
