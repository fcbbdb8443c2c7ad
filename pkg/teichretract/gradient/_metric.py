from dataclasses import dataclass
import numpy as np
from ._vectors import Covector, TangentVector
from ..charts import FNPoint

METRIC_KINDS = ('MODEL_WP', 'EUCLID_FN')
TWIST_FRAMES = ('angle', 'coordinate')


@dataclass(frozen=True)
class MetricModel:
    """Inner product on covectors of a Fenchel-Nielsen chart.

    MODEL_WP is diagonal with weight 2 l_i / pi on the length part and
    twist_scale * 2 l_i / pi on the twist part. With the 'angle' frame the
    diagonal is taken in the coframe (dl_i, dtheta_i - (theta_i/l_i) dl_i),
    which is fixed by Dehn twists about pants curves. The 'coordinate'
    frame uses (dl_i, dtheta_i) directly. EUCLID_FN is the identity.
    """

    kind: str = 'MODEL_WP'
    twist_scale: float = 1.0
    twist_frame: str = 'angle'

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(
                f'Unknown metric {self.kind!r}, choose from {METRIC_KINDS}'
            )
        if self.twist_frame not in TWIST_FRAMES:
            raise ValueError(
                f'Unknown twist frame {self.twist_frame!r}, '
                f'choose from {TWIST_FRAMES}'
            )
        if not self.twist_scale > 0:
            raise ValueError('twist_scale must be positive')

    @property
    def is_euclidean(self) -> bool:
        return self.kind == 'EUCLID_FN'

    @property
    def twist_invariant(self) -> bool:
        """True if Dehn twists about pants curves are isometries."""
        return not self.is_euclidean and self.twist_frame == 'angle'

    def weights(self, x: FNPoint):
        d = x.chart.n_curves
        if self.is_euclidean:
            return np.ones(d), np.ones(d)
        length_weights = 2*x.length_array/np.pi
        return length_weights, self.twist_scale*length_weights

    def _frame_slopes(self, x: FNPoint) -> np.ndarray:
        if self.is_euclidean or self.twist_frame == 'coordinate':
            return np.zeros(x.chart.n_curves)
        return x.twist_array/x.length_array

    def inner(self, x: FNPoint, alpha: Covector, beta: Covector) -> float:
        length_weights, twist_weights = self.weights(x)
        slopes = self._frame_slopes(x)
        alpha_frame = alpha.length + alpha.twist*slopes
        beta_frame = beta.length + beta.twist*slopes
        return float(
            np.sum(length_weights*alpha_frame*beta_frame)
            + np.sum(twist_weights*alpha.twist*beta.twist)
        )

    def raise_index(self, x: FNPoint, alpha: Covector) -> TangentVector:
        """Gradient vector dual to a covector."""
        length_weights, twist_weights = self.weights(x)
        slopes = self._frame_slopes(x)
        frame = length_weights*(alpha.length + alpha.twist*slopes)
        return TangentVector(
            frame, frame*slopes + twist_weights*alpha.twist
        )

    def to_json(self) -> dict:
        return {
            'kind': self.kind,
            'twist_scale': self.twist_scale,
            'twist_frame': self.twist_frame,
        }
