from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple
import numpy as np
from ._chart import Chart
from ..errors import InvalidPointError, ChartMismatchError


@dataclass(frozen=True)
class FNPoint:
    """Point of Teichmuller space in Fenchel-Nielsen coordinates.

    Lengths and twists are indexed by the pants curves of the chart.
    Twists live on the universal cover of twist space, so they are never
    reduced.
    """

    chart: Chart
    lengths: Tuple[float, ...]
    twists: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(
            self, 'lengths', tuple(float(v) for v in self.lengths)
        )
        object.__setattr__(
            self, 'twists', tuple(float(v) for v in self.twists)
        )

    @property
    def length_array(self) -> np.ndarray:
        return np.array(self.lengths, dtype=float)

    @property
    def twist_array(self) -> np.ndarray:
        return np.array(self.twists, dtype=float)

    @property
    def coordinates(self) -> np.ndarray:
        """Lengths followed by twists."""
        return np.concatenate([self.length_array, self.twist_array])

    def replace(
        self,
        lengths: Optional[Sequence[float]] = None,
        twists: Optional[Sequence[float]] = None
    ) -> 'FNPoint':
        """New point on the same chart with some coordinates changed."""
        return FNPoint(
            chart=self.chart,
            lengths=tuple(self.lengths if lengths is None else lengths),
            twists=tuple(self.twists if twists is None else twists),
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            'chart': self.chart.to_json(),
            'lengths': list(self.lengths),
            'twists': list(self.twists),
        }

    @classmethod
    def from_json(
        cls, data: Dict[str, Any], chart: Optional[Chart] = None
    ) -> 'FNPoint':
        if chart is None:
            chart = Chart.from_json(data['chart'])
        return cls(
            chart=chart,
            lengths=tuple(data['lengths']),
            twists=tuple(data['twists']),
        )


def point_from_coordinates(chart: Chart, coordinates: np.ndarray) -> FNPoint:
    """Inverse of FNPoint.coordinates."""
    d = chart.n_curves
    return FNPoint(
        chart=chart,
        lengths=tuple(coordinates[:d]),
        twists=tuple(coordinates[d:]),
    )


def validate_point(x: FNPoint) -> FNPoint:
    """Check that a point lies in the chart domain.

    Returns the point unchanged.
    """
    d = x.chart.n_curves
    if len(x.lengths) != d or len(x.twists) != d:
        raise InvalidPointError(
            f'Chart has {d} pants curves but point has '
            f'{len(x.lengths)} lengths and {len(x.twists)} twists'
        )
    for i, length in enumerate(x.lengths):
        if not np.isfinite(length):
            raise InvalidPointError(f'non-finite length {length} on curve {i}')
        if length <= 0:
            raise InvalidPointError(
                f'nonpositive length {length} on curve {i}'
            )
    for i, twist in enumerate(x.twists):
        if not np.isfinite(twist):
            raise InvalidPointError(f'non-finite twist {twist} on curve {i}')
    return x


def check_same_chart(chart: Chart, x: FNPoint):
    if x.chart != chart:
        raise ChartMismatchError(
            f'Point is on chart {x.chart.surface.label} {x.chart.gluing}, '
            f'expected {chart.surface.label} {chart.gluing}'
        )
