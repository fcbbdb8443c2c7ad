"""
Holonomy representations of Fenchel-Nielsen points and lengths of curves.
"""

from ._words import (
    Word, WordGroup, parse_word, format_word, invert, free_reduce,
    cyclic_reduce, canonical_word, is_primitive, substitute
)
from ._curves import CurveClass, ShortSet
from ._pieces import (
    sl2_inverse, pants_pair, torus_pair, torus_traces, glue,
    trace_for_length
)
from ._holonomy import (
    Holonomy, Layout, LAYOUTS, layout_for, twist_substitution, build_holonomy,
    curve_length, fricke_residual, length_from_trace, TRACE_TOL
)
from ._enumerate import (
    EnumerationConfig, enumerate_short_geodesics, default_max_word_length
)

__all__ = [
    "Word",
    "WordGroup",
    "parse_word",
    "format_word",
    "invert",
    "free_reduce",
    "cyclic_reduce",
    "canonical_word",
    "is_primitive",
    "substitute",
    "CurveClass",
    "ShortSet",
    "sl2_inverse",
    "pants_pair",
    "torus_pair",
    "torus_traces",
    "glue",
    "trace_for_length",
    "Holonomy",
    "Layout",
    "LAYOUTS",
    "layout_for",
    "twist_substitution",
    "build_holonomy",
    "curve_length",
    "fricke_residual",
    "length_from_trace",
    "TRACE_TOL",
    "EnumerationConfig",
    "enumerate_short_geodesics",
    "default_max_word_length",
]
