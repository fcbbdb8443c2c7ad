from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional
from ..gradient import FieldMode, MetricModel
from ..holonomy import EnumerationConfig

INTEGRATORS = ('RK45', 'DOP853', 'RK23')


@dataclass(frozen=True)
class FlowConfig:
    """Settings for integrating the retraction field.

    duration of None means a flow for time epsilon.
    """

    epsilon: float = 0.05
    duration: Optional[float] = None
    mode: FieldMode = FieldMode.BLENDED
    metric: MetricModel = field(default_factory=MetricModel)
    method: str = 'RK45'
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: Optional[float] = None
    first_step: Optional[float] = None
    max_steps: int = 100000
    n_samples: int = 101
    epsilon_max: float = 0.1
    enumeration: EnumerationConfig = field(default_factory=EnumerationConfig)

    def __post_init__(self):
        object.__setattr__(self, 'mode', FieldMode(self.mode))
        if not 0 < self.epsilon <= self.epsilon_max:
            raise ValueError(
                f'epsilon must lie in (0, {self.epsilon_max}], '
                f'got {self.epsilon}'
            )
        if self.duration is not None and not self.duration > 0:
            raise ValueError(f'duration must be positive, got {self.duration}')
        if self.method not in INTEGRATORS:
            raise ValueError(
                f'Unknown integrator {self.method!r}, '
                f'choose from {INTEGRATORS}'
            )
        if not (self.rtol > 0 and self.atol > 0):
            raise ValueError('Tolerances must be positive')
        if self.n_samples < 2:
            raise ValueError('Need at least 2 samples')
        if self.max_steps < 1:
            raise ValueError('max_steps must be positive')

    @property
    def total_time(self) -> float:
        return self.epsilon if self.duration is None else self.duration

    def with_epsilon(self, epsilon: float) -> 'FlowConfig':
        """Time epsilon flow for another epsilon."""
        return replace(self, epsilon=epsilon, duration=None)

    def to_json(self) -> Dict[str, Any]:
        return {
            'epsilon': self.epsilon,
            'duration': self.total_time,
            'mode': self.mode.value,
            'metric': self.metric.to_json(),
            'method': self.method,
            'rtol': self.rtol,
            'atol': self.atol,
            'max_step': self.max_step,
            'first_step': self.first_step,
            'max_steps': self.max_steps,
            'n_samples': self.n_samples,
            'enumeration': self.enumeration.to_json(),
        }
