"""
Surface types, pants decompositions and Fenchel-Nielsen points.
"""

from ._surface import SurfaceType, SUPPORTED_SURFACES
from ._chart import (
    Chart, make_chart, standard_chart, STANDARD_GLUINGS, PUNCTURE
)
from ._point import (
    FNPoint, validate_point, point_from_coordinates, check_same_chart
)

__all__ = [
    "SurfaceType",
    "SUPPORTED_SURFACES",
    "Chart",
    "make_chart",
    "standard_chart",
    "STANDARD_GLUINGS",
    "PUNCTURE",
    "FNPoint",
    "validate_point",
    "point_from_coordinates",
    "check_same_chart",
]
