import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional
import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError
from ._vectors import Covector, TangentVector, pair
from ._metric import MetricModel
from ..charts import FNPoint, validate_point, point_from_coordinates
from ..holonomy import (
    CurveClass, ShortSet, EnumerationConfig, build_holonomy, curve_length
)
from ..systole import short_set
from ..cutoff import cutoff_phi, ramp
from ..errors import (
    ChartViolationError, ConditioningError, StepSizeError
)

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12
SINGULAR_TOL = 1e-12
RESIDUAL_TOL = 1e-9
MIN_STEP = 1e-10


class FieldMode(str, Enum):
    BLENDED = 'BLENDED'
    NAIVE = 'NAIVE'
    ROOT_LENGTH = 'ROOT_LENGTH'


def _length_at(coordinates: np.ndarray, x: FNPoint, c: CurveClass) -> float:
    y = point_from_coordinates(x.chart, coordinates)
    if c.pants_index is not None:
        return y.lengths[c.pants_index]
    return curve_length(build_holonomy(y), c)


def _central_difference(x: FNPoint, c: CurveClass, h: float) -> np.ndarray:
    base = x.coordinates
    gradient = np.zeros_like(base)
    for j in range(len(base)):
        step = np.zeros_like(base)
        step[j] = h
        gradient[j] = (
            _length_at(base + step, x, c) - _length_at(base - step, x, c)
        )/(2*h)
    return gradient


def length_differential(
    x: FNPoint, c: CurveClass, h: float = 1e-3
) -> Covector:
    """Differential of the length of a curve class.

    Exact for pants curves. Other curves use central differences at steps
    h and h/2 combined by Richardson extrapolation.
    """
    validate_point(x)
    d = x.chart.n_curves
    if c.pants_index is not None:
        return Covector.unit_length(d, c.pants_index)
    if not h > MIN_STEP:
        raise StepSizeError(f'Step {h} underflows minimum {MIN_STEP}')
    if min(x.lengths) <= 2*h:
        raise StepSizeError(
            f'Step {h} too large for lengths {x.lengths}'
        )
    coarse = _central_difference(x, c, h)
    fine = _central_difference(x, c, h/2)
    return Covector.from_array((4*fine - coarse)/3)


def _check_pants_only(S: ShortSet):
    if not S.all_pants:
        offenders = [curve.label for curve in S.curves if not curve.is_pants]
        raise ChartViolationError(
            f'Curves {offenders} outside the chart entered the short set '
            f'at threshold {S.threshold}'
        )


def gram_matrix(x: FNPoint, S: ShortSet, m: MetricModel) -> np.ndarray:
    """Inner products of length gradients of the short pants curves."""
    if S.is_empty:
        raise ValueError('Gram matrix of an empty short set')
    _check_pants_only(S)
    d = x.chart.n_curves
    differentials = [Covector.unit_length(d, i) for i in S.pants_indices]
    G = np.array([
        [m.inner(x, alpha, beta) for beta in differentials]
        for alpha in differentials
    ])
    eigenvalues = np.linalg.eigvalsh(G)
    if eigenvalues[0] <= SINGULAR_TOL*max(eigenvalues[-1], 1.0):
        raise ConditioningError(
            f'Gram matrix is singular, eigenvalues {eigenvalues}'
        )
    return G


def root_length_gram(x: FNPoint, S: ShortSet, m: MetricModel) -> np.ndarray:
    """(2 pi) <grad l^(1/2), grad l'^(1/2)> for the short pants curves."""
    G = gram_matrix(x, S, m)
    roots = np.sqrt(S.lengths)
    return 2*np.pi*G/(4*np.outer(roots, roots))


def solve_kappa(G: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Solve G kappa = targets for symmetric positive definite G."""
    G = np.asarray(G, dtype=float)
    targets = np.asarray(targets, dtype=float)
    condition = np.linalg.cond(G)
    if not condition <= CONDITION_LIMIT:
        raise ConditioningError(
            f'Gram condition number {condition:.3e} exceeds '
            f'{CONDITION_LIMIT:.0e}'
        )
    try:
        factor = cho_factor(G)
    except LinAlgError as err:
        raise ConditioningError(
            'Gram matrix is not positive definite'
        ) from err
    kappa = cho_solve(factor, targets)
    residual = float(np.max(np.abs(G @ kappa - targets), initial=0.0))
    if residual > RESIDUAL_TOL:
        raise ConditioningError(f'Solve residual {residual:.3e} too large')
    return kappa


@dataclass(frozen=True, eq=False)
class FieldEvaluation:
    """Everything computed while evaluating the field at a point."""

    point: FNPoint
    epsilon: float
    mode: FieldMode
    short_set: ShortSet
    systole: float
    phi: float
    targets: np.ndarray
    gram: np.ndarray
    kappa: np.ndarray
    residual: float
    vector: TangentVector

    @property
    def expected_derivatives(self) -> np.ndarray:
        """Short length derivatives the field is built to have."""
        if self.mode == FieldMode.ROOT_LENGTH:
            lengths = self.short_set.lengths
            return self.phi*self.targets*np.sqrt(2*lengths/np.pi)
        return self.phi*self.targets

    def to_json(self) -> Dict[str, Any]:
        return {
            'point': {
                'lengths': list(self.point.lengths),
                'twists': list(self.point.twists),
            },
            'epsilon': self.epsilon,
            'mode': self.mode.value,
            'short_set': self.short_set.to_json(),
            'systole': self.systole,
            'phi': self.phi,
            'targets': self.targets.tolist(),
            'gram': self.gram.tolist(),
            'kappa': self.kappa.tolist(),
            'residual': self.residual,
            'vector': self.vector.to_json(),
            'expected_derivatives': self.expected_derivatives.tolist(),
        }


def evaluate_field(
    x: FNPoint,
    epsilon: float,
    mode: FieldMode = FieldMode.BLENDED,
    m: MetricModel = MetricModel(),
    cfg: Optional[EnumerationConfig] = None
) -> FieldEvaluation:
    if epsilon <= 0:
        raise ValueError(f'epsilon must be positive, got {epsilon}')
    mode = FieldMode(mode)
    d = x.chart.n_curves
    S = short_set(x, 3*epsilon, cfg)
    if S.is_empty:
        empty = np.zeros(0)
        return FieldEvaluation(
            point=x, epsilon=epsilon, mode=mode, short_set=S,
            systole=np.inf, phi=0.0, targets=empty,
            gram=np.zeros((0, 0)), kappa=empty, residual=0.0,
            vector=TangentVector.zeros(d),
        )
    _check_pants_only(S)
    value = S.min_length
    lengths = S.lengths
    if mode == FieldMode.NAIVE:
        targets = np.ones(len(S))
        phi = 1.0
    else:
        targets = np.asarray(ramp(lengths, epsilon), dtype=float)
        phi = cutoff_phi(value, epsilon)

    if mode == FieldMode.ROOT_LENGTH:
        G = root_length_gram(x, S, m)
        # (2 pi)^(1/2) grad l^(1/2) = (pi/2)^(1/2) grad l / l^(1/2)
        scales = np.sqrt(np.pi/2)/np.sqrt(lengths)
    else:
        G = gram_matrix(x, S, m)
        scales = np.ones(len(S))
    kappa = solve_kappa(G, targets)
    residual = float(np.max(np.abs(G @ kappa - targets)))

    vector = TangentVector.zeros(d)
    for index, weight, scale in zip(S.pants_indices, kappa, scales):
        gradient = m.raise_index(x, Covector.unit_length(d, index))
        vector = vector + (phi*weight*scale)*gradient
    return FieldEvaluation(
        point=x, epsilon=epsilon, mode=mode, short_set=S, systole=value,
        phi=phi, targets=targets, gram=G, kappa=kappa, residual=residual,
        vector=vector,
    )


def vector_field_V(
    x: FNPoint,
    epsilon: float,
    mode: FieldMode = FieldMode.BLENDED,
    m: MetricModel = MetricModel(),
    cfg: Optional[EnumerationConfig] = None
) -> TangentVector:
    """The retraction field at a point.

    BLENDED ramps each short curve's target derivative from 1 at 2 eps to 0
    at 3 eps and multiplies by the cutoff of the systole. NAIVE asks every
    curve of length at most 3 eps for derivative 1, which jumps when a
    curve crosses 3 eps.
    """
    return evaluate_field(x, epsilon, mode, m, cfg).vector


def directional_derivative(
    x: FNPoint, c: CurveClass, v: TangentVector, h: float = 1e-6
) -> float:
    """Central difference of the length of c along v."""
    base = x.coordinates
    direction = v.as_array()
    return (
        _length_at(base + h*direction, x, c)
        - _length_at(base - h*direction, x, c)
    )/(2*h)


def field_diagnostics(
    x: FNPoint,
    epsilon: float,
    mode: FieldMode = FieldMode.BLENDED,
    m: MetricModel = MetricModel(),
    cfg: Optional[EnumerationConfig] = None,
    h: float = 1e-6
) -> Dict[str, Any]:
    """Field evaluation with finite difference checks of each target."""
    evaluation = evaluate_field(x, epsilon, mode, m, cfg)
    report = evaluation.to_json()
    measured = [
        directional_derivative(x, curve, evaluation.vector, h)
        for curve in evaluation.short_set.curves
    ]
    report['measured_derivatives'] = measured
    report['derivative_error'] = float(np.max(
        np.abs(np.array(measured) - evaluation.expected_derivatives),
        initial=0.0
    ))
    return report


__all__ = [
    'FieldMode', 'FieldEvaluation', 'length_differential', 'gram_matrix',
    'root_length_gram', 'solve_kappa', 'evaluate_field', 'vector_field_V',
    'directional_derivative', 'field_diagnostics', 'pair',
]
