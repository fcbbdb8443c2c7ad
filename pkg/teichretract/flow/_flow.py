"""
Integration of the retraction field.

The state is integrated in the coordinates (l_i, theta_i / l_i). Dehn
twists about pants curves act on them by integer shifts of the second
block, so the flow commutes with those twists up to rounding.
"""
import logging
from dataclasses import replace
from typing import Optional
import numpy as np
from scipy.integrate import solve_ivp
from ._config import FlowConfig
from ._trajectory import Trajectory
from ..charts import FNPoint, validate_point
from ..gradient import evaluate_field
from ..systole import short_set, systole, TIE_TOL
from ..errors import InvalidPointError, StepSizeError

logger = logging.getLogger(__name__)


class _BudgetExceeded(Exception):
    pass


def _is_fixed(x0: FNPoint, cfg: FlowConfig) -> bool:
    """Whether the field vanishes at x0, so the flow stays there."""
    if short_set(x0, 3*cfg.epsilon, cfg.enumeration).is_empty:
        return True
    evaluation = evaluate_field(
        x0, cfg.epsilon, cfg.mode, cfg.metric, cfg.enumeration
    )
    return not np.any(evaluation.vector.as_array())


def _to_state(x: FNPoint) -> np.ndarray:
    lengths = x.length_array
    return np.concatenate([lengths, x.twist_array/lengths])


def _from_state(x0: FNPoint, state: np.ndarray) -> FNPoint:
    d = x0.chart.n_curves
    lengths = state[:d]
    if not np.all(lengths > 0):
        raise InvalidPointError(
            f'Flow left the chart domain with lengths {lengths}'
        )
    return FNPoint(
        chart=x0.chart,
        lengths=tuple(lengths),
        twists=tuple(state[d:]*lengths),
    )


def _sample(x: FNPoint, cfg: FlowConfig):
    """Systole, active pants curves and predicted systole rate."""
    evaluation = evaluate_field(
        x, cfg.epsilon, cfg.mode, cfg.metric, cfg.enumeration
    )
    S = evaluation.short_set
    if S.is_empty:
        value, _ = systole(x, cfg.enumeration)
        return value, (), 0.0
    rates = [
        evaluation.vector.length[index]
        for index, length in zip(S.pants_indices, S.lengths)
        if length <= S.min_length + TIE_TOL
    ]
    return S.min_length, tuple(S.pants_indices), float(min(rates))


def flow(x0: FNPoint, cfg: Optional[FlowConfig] = None) -> Trajectory:
    """Integrate the retraction field from x0.

    Parameters
    ----------
    x0 : FNPoint
        Starting point.
    cfg : Optional[FlowConfig]
        Field, metric and integrator settings. Defaults to FlowConfig().

    Returns
    -------
    trajectory : Trajectory
        n_samples evenly spaced samples from time 0 to the duration.

    Raises
    ------
    ChartViolationError
        If a curve outside the chart becomes shorter than 3 epsilon.
    StepSizeError
        If the step size underflows or the step budget runs out.
    ConditioningError
        If the Gram system becomes too ill-conditioned.
    """
    if cfg is None:
        cfg = FlowConfig()
    validate_point(x0)
    times = np.linspace(0.0, cfg.total_time, cfg.n_samples)

    if _is_fixed(x0, cfg):
        value, _ = systole(x0, cfg.enumeration)
        return Trajectory(
            epsilon=cfg.epsilon,
            times=times,
            points=tuple(x0 for _ in times),
            systoles=np.full(len(times), value),
            active_sets=tuple(() for _ in times),
            derivatives=np.zeros(len(times)),
            stats={'nfev': 0, 'status': 0, 'message': 'fixed point'},
        )

    d = x0.chart.n_curves
    n_evaluations = [0]

    def velocity(t, state):
        n_evaluations[0] += 1
        if n_evaluations[0] > cfg.max_steps:
            raise _BudgetExceeded()
        x = _from_state(x0, state)
        vector = evaluate_field(
            x, cfg.epsilon, cfg.mode, cfg.metric, cfg.enumeration
        ).vector
        lengths = state[:d]
        angles = state[d:]
        return np.concatenate([
            vector.length,
            (vector.twist - angles*vector.length)/lengths,
        ])

    options = {}
    if cfg.max_step is not None:
        options['max_step'] = cfg.max_step
    if cfg.first_step is not None:
        options['first_step'] = cfg.first_step
    try:
        solution = solve_ivp(
            velocity, (0.0, cfg.total_time), _to_state(x0),
            method=cfg.method, t_eval=times, rtol=cfg.rtol, atol=cfg.atol,
            **options
        )
    except _BudgetExceeded:
        raise StepSizeError(
            f'Flow exceeded {cfg.max_steps} field evaluations'
        )
    if solution.status != 0:
        raise StepSizeError(f'Integrator failed: {solution.message}')
    logger.debug(
        'Flow from %s used %d field evaluations', x0.lengths, solution.nfev
    )

    points = tuple(
        _from_state(x0, state) for state in solution.y.T
    )
    samples = [_sample(point, cfg) for point in points]
    return Trajectory(
        epsilon=cfg.epsilon,
        times=solution.t,
        points=points,
        systoles=np.array([value for value, _, _ in samples]),
        active_sets=tuple(active for _, active, _ in samples),
        derivatives=np.array([rate for _, _, rate in samples]),
        stats={
            'nfev': int(solution.nfev),
            'status': int(solution.status),
            'message': str(solution.message),
        },
    )


def retract(
    x0: FNPoint, epsilon: float, cfg: Optional[FlowConfig] = None
) -> FNPoint:
    """Endpoint of the time epsilon flow.

    Points where the field vanishes, which includes every point whose
    systole is at least 3 epsilon, are returned unchanged.
    """
    if cfg is None:
        cfg = FlowConfig(epsilon=epsilon)
    else:
        cfg = cfg.with_epsilon(epsilon)
    validate_point(x0)
    if _is_fixed(x0, cfg):
        return x0
    return flow(x0, replace(cfg, n_samples=2)).final_point
