from dataclasses import dataclass, field
from typing import Any, Dict, Tuple
import numpy as np
import pandas as pd
from ..charts import FNPoint

MEMBERSHIP_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples of a flow line.

    derivatives holds the rate of change of the systole predicted by the
    field at each sample, the least derivative among its realizers.
    """

    epsilon: float
    times: np.ndarray
    points: Tuple[FNPoint, ...]
    systoles: np.ndarray
    active_sets: Tuple[Tuple[int, ...], ...]
    derivatives: np.ndarray
    stats: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def initial_point(self) -> FNPoint:
        return self.points[0]

    @property
    def final_point(self) -> FNPoint:
        return self.points[-1]

    @property
    def is_constant(self) -> bool:
        return all(point == self.points[0] for point in self.points)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([point.lengths for point in self.points])

    @property
    def twists(self) -> np.ndarray:
        return np.array([point.twists for point in self.points])

    def monotonicity_violation(self) -> float:
        """Largest decrease of the systole between samples."""
        if len(self.systoles) < 2:
            return 0.0
        return float(max(0.0, -np.min(np.diff(self.systoles))))

    def unit_speed_error(self) -> float:
        """Deviation of the sampled systole rate from 1 below 2 epsilon."""
        rates = np.diff(self.systoles)/np.diff(self.times)
        deep = self.systoles[1:] <= 2*self.epsilon
        if not np.any(deep):
            return 0.0
        return float(np.max(np.abs(rates[deep] - 1)))

    def to_frame(self) -> pd.DataFrame:
        d = len(self.points[0].lengths)
        data: Dict[str, Any] = {'time': self.times}
        lengths = self.lengths
        twists = self.twists
        for i in range(d):
            data[f'l_{i + 1}'] = lengths[:, i]
        for i in range(d):
            data[f'theta_{i + 1}'] = twists[:, i]
        data['systole'] = self.systoles
        data['active_set'] = [
            ';'.join(map(str, active)) for active in self.active_sets
        ]
        data['dsystole_dt'] = self.derivatives
        return pd.DataFrame(data)

    def summary(self) -> Dict[str, Any]:
        return {
            'epsilon': self.epsilon,
            'duration': float(self.times[-1]),
            'start': {
                'lengths': list(self.initial_point.lengths),
                'twists': list(self.initial_point.twists),
                'systole': float(self.systoles[0]),
                'in_truncated': bool(
                    self.systoles[0] >= self.epsilon - MEMBERSHIP_SLACK
                ),
            },
            'end': {
                'lengths': list(self.final_point.lengths),
                'twists': list(self.final_point.twists),
                'systole': float(self.systoles[-1]),
                'in_truncated': bool(
                    self.systoles[-1] >= self.epsilon - MEMBERSHIP_SLACK
                ),
            },
            'fixed': self.is_constant,
            'monotonicity_violation': self.monotonicity_violation(),
            'unit_speed_error': self.unit_speed_error(),
            'steps': dict(self.stats),
        }
