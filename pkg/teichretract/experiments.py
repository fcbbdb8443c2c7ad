"""
Batch experiments over sampled points.

The continuity demonstration pairs the NAIVE and BLENDED fields across the
locus where a pants curve has length exactly 3 epsilon. The cover check
samples the thick part of the once-punctured torus and confirms that a
finite family of truncated Bers boxes covers it up to the mapping class
group, remarking points whose pants curve is too long.
"""
import logging
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import numpy as np
from .charts import Chart, FNPoint, standard_chart
from .flow import FlowConfig, flow
from .gradient import FieldMode, vector_field_V
from .holonomy import EnumerationConfig
from .mcg import reduce_twists
from .systole import BersBox, in_bers_box, in_truncated, systole

logger = logging.getLogger(__name__)

THIN_MIN = 0.005
THICK_RANGE = (0.1, 3.0)
TWIST_RANGE = 2.0
RETRACTION_SLACK = 1e-6
MONOTONICITY_TOL = 1e-6


def _identity_progress(x, total: int = 0):
    return x


def parallel_map(
    function: Callable,
    arguments: Sequence[Tuple],
    n_jobs: int = 1,
    progress: Optional[Callable] = None
) -> List[Any]:
    """Apply function to each argument tuple, results in input order."""
    if progress is None:
        progress = _identity_progress
    if n_jobs > 1:
        with Pool(n_jobs) as pool:
            return pool.starmap(
                function, progress(arguments, total=len(arguments))
            )
    return [
        function(*args)
        for args in progress(arguments, total=len(arguments))
    ]


def sample_thin_points(
    chart: Chart, n: int, epsilon: float, rng: np.random.Generator
) -> List[FNPoint]:
    """Random starts with at least one pants curve shorter than epsilon.

    Each point has a random nonempty set of thin curves with lengths in
    [min(0.005, epsilon/2), epsilon), the remaining curves in [0.1, 3]
    and twists in [-2, 2].
    """
    d = chart.n_curves
    thin_min = min(THIN_MIN, epsilon/2)
    points = []
    for _ in range(n):
        n_thin = int(rng.integers(1, d + 1))
        thin = rng.permutation(d)[:n_thin]
        lengths = rng.uniform(*THICK_RANGE, size=d)
        lengths[thin] = rng.uniform(thin_min, epsilon, size=n_thin)
        twists = rng.uniform(-TWIST_RANGE, TWIST_RANGE, size=d)
        points.append(FNPoint(chart, tuple(lengths), tuple(twists)))
    return points


def retraction_row(x: FNPoint, cfg: FlowConfig) -> Dict[str, Any]:
    """Flow one start and summarize the retraction properties."""
    trajectory = flow(x, cfg)
    start = float(trajectory.systoles[0])
    end = float(trajectory.systoles[-1])
    row: Dict[str, Any] = {}
    for i, length in enumerate(x.lengths):
        row[f'l_{i + 1}'] = length
    for i, twist in enumerate(x.twists):
        row[f'theta_{i + 1}'] = twist
    row.update({
        'systole_start': start,
        'systole_end': end,
        'in_truncated_end': end >= cfg.epsilon - RETRACTION_SLACK,
        'fixed': trajectory.is_constant,
        'monotonicity_violation': trajectory.monotonicity_violation(),
        'unit_speed_error': trajectory.unit_speed_error(),
        'nfev': trajectory.stats.get('nfev', 0),
    })
    row['passed'] = bool(
        row['in_truncated_end']
        and row['monotonicity_violation'] <= MONOTONICITY_TOL
        and (start < 3*cfg.epsilon or row['fixed'])
    )
    return row


def retraction_batch(
    points: Sequence[FNPoint],
    cfg: FlowConfig,
    n_jobs: int = 1,
    progress: Optional[Callable] = None
) -> List[Dict[str, Any]]:
    return parallel_map(
        retraction_row, [(x, cfg) for x in points], n_jobs, progress
    )


@dataclass(frozen=True)
class ContinuityReport:
    epsilon: float
    straddle_offset: float
    pair_distance: float
    n_calibration: int
    n_pairs: int
    lipschitz_estimate: float
    safety: float
    max_ratio: float
    n_violations: int
    naive_jump: float
    blended_delta: float
    max_field_norm: float

    @property
    def lipschitz_bound(self) -> float:
        return self.safety*self.lipschitz_estimate

    @property
    def naive_discontinuous(self) -> bool:
        return self.naive_jump > 0.1*self.max_field_norm

    @property
    def blended_continuous(self) -> bool:
        return (
            self.blended_delta
            <= self.lipschitz_estimate*2*self.straddle_offset
            and self.n_violations == 0
        )

    @property
    def passed(self) -> bool:
        return (
            self.naive_discontinuous
            and self.blended_continuous
            and self.naive_jump > self.blended_delta
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            'epsilon': self.epsilon,
            'straddle_offset': self.straddle_offset,
            'pair_distance': self.pair_distance,
            'n_calibration': self.n_calibration,
            'n_pairs': self.n_pairs,
            'lipschitz_estimate': self.lipschitz_estimate,
            'safety': self.safety,
            'lipschitz_bound': self.lipschitz_bound,
            'max_ratio': self.max_ratio,
            'n_violations': self.n_violations,
            'naive_jump': self.naive_jump,
            'blended_delta': self.blended_delta,
            'max_field_norm': self.max_field_norm,
            'naive_discontinuous': self.naive_discontinuous,
            'blended_continuous': self.blended_continuous,
            'passed': self.passed,
        }


def _near_locus(
    chart: Chart, first_length: float, rng: np.random.Generator
) -> FNPoint:
    """Point with curve 0 at a given length and the other curves thin."""
    lengths = rng.uniform(0.02, 0.04, size=chart.n_curves)
    lengths[0] = first_length
    twists = rng.uniform(-lengths/2, lengths/2)
    return FNPoint(chart, tuple(lengths), tuple(twists))


def _nearby_pair(
    chart: Chart, epsilon: float, distance: float,
    rng: np.random.Generator
) -> Tuple[FNPoint, FNPoint]:
    x = _near_locus(
        chart, rng.uniform(2*epsilon, 3*epsilon + 2*distance), rng
    )
    direction = rng.normal(size=chart.dimension)
    direction /= np.linalg.norm(direction)
    step = rng.uniform(distance/2, distance)*direction
    d = chart.n_curves
    y = FNPoint(
        chart,
        tuple(x.length_array + step[:d]),
        tuple(x.twist_array + step[d:]),
    )
    return x, y


def _field_change(
    x: FNPoint, y: FNPoint, epsilon: float, mode: FieldMode,
    cfg: FlowConfig
) -> float:
    vx = vector_field_V(x, epsilon, mode, cfg.metric, cfg.enumeration)
    vy = vector_field_V(y, epsilon, mode, cfg.metric, cfg.enumeration)
    return float(np.linalg.norm(vx.as_array() - vy.as_array()))


def continuity_demo(
    cfg: FlowConfig,
    rng: np.random.Generator,
    chart: Optional[Chart] = None,
    n_calibration: int = 200,
    n_pairs: int = 1000,
    n_straddle: int = 20,
    straddle_offset: float = 1e-4,
    pair_distance: float = 1e-4,
    safety: float = 10.0
) -> ContinuityReport:
    """Compare the NAIVE and BLENDED fields across the 3 epsilon locus.

    The Lipschitz constant K of the BLENDED field is estimated from
    n_calibration nearby pairs, then n_pairs fresh pairs are checked
    against safety * K. Straddling pairs have curve 0 at 3 eps -/+ offset
    with identical remaining coordinates.
    """
    if chart is None:
        chart = standard_chart(1, 2)
    epsilon = cfg.epsilon

    def ratios(n: int) -> np.ndarray:
        values = []
        for _ in range(n):
            x, y = _nearby_pair(chart, epsilon, pair_distance, rng)
            distance = np.linalg.norm(x.coordinates - y.coordinates)
            change = _field_change(x, y, epsilon, FieldMode.BLENDED, cfg)
            values.append(change/distance)
        return np.array(values)

    lipschitz = float(np.max(ratios(n_calibration)))
    checked = ratios(n_pairs)
    n_violations = int(np.sum(checked > safety*lipschitz))
    if n_violations:
        logger.warning(
            '%d of %d pairs exceed the Lipschitz bound %.3e',
            n_violations, n_pairs, safety*lipschitz
        )

    naive_jumps = []
    blended_deltas = []
    norms = []
    for _ in range(n_straddle):
        inside = _near_locus(chart, 3*epsilon - straddle_offset, rng)
        lengths = list(inside.lengths)
        lengths[0] = 3*epsilon + straddle_offset
        outside = inside.replace(lengths=lengths)
        naive_jumps.append(
            _field_change(inside, outside, epsilon, FieldMode.NAIVE, cfg)
        )
        blended_deltas.append(
            _field_change(inside, outside, epsilon, FieldMode.BLENDED, cfg)
        )
        for point in (inside, outside):
            norms.append(vector_field_V(
                point, epsilon, FieldMode.NAIVE, cfg.metric, cfg.enumeration
            ).norm())

    return ContinuityReport(
        epsilon=epsilon,
        straddle_offset=straddle_offset,
        pair_distance=pair_distance,
        n_calibration=n_calibration,
        n_pairs=n_pairs,
        lipschitz_estimate=lipschitz,
        safety=safety,
        max_ratio=float(np.max(checked, initial=0.0)),
        n_violations=n_violations,
        naive_jump=float(min(naive_jumps)),
        blended_delta=float(max(blended_deltas)),
        max_field_norm=float(max(norms)),
    )


@dataclass(frozen=True)
class CoverReport:
    epsilon: float
    boxes: Tuple[BersBox, ...]
    n_samples: int
    n_rejected: int
    n_direct: int
    n_remarked: int
    uncovered: Tuple[FNPoint, ...]

    @property
    def n_covered(self) -> int:
        return self.n_direct + self.n_remarked

    @property
    def passed(self) -> bool:
        return self.n_covered == self.n_samples

    def to_json(self) -> Dict[str, Any]:
        return {
            'epsilon': self.epsilon,
            'boxes': [box.to_json() for box in self.boxes],
            'n_samples': self.n_samples,
            'n_rejected': self.n_rejected,
            'n_direct': self.n_direct,
            'n_remarked': self.n_remarked,
            'n_covered': self.n_covered,
            'uncovered': [
                {'lengths': list(x.lengths), 'twists': list(x.twists)}
                for x in self.uncovered
            ],
            'passed': self.passed,
        }


def _covered_after_remarking(
    value: float, boxes: Sequence[BersBox]
) -> bool:
    # Pants curve replaced by the systole curve, twist within value/2.
    return any(
        box.epsilon <= value <= box.C and value/2 <= box.theta0
        for box in boxes
    )


def cover_check(
    boxes: Sequence[Tuple[float, float]],
    epsilon: float,
    rng: np.random.Generator,
    n_samples: int = 200,
    length_range: Tuple[Optional[float], Optional[float]] = (None, None),
    twist_range: float = 10.0,
    enumeration: Optional[EnumerationConfig] = None
) -> CoverReport:
    """Sample T(epsilon) of the once-punctured torus and test coverage.

    boxes lists (C, theta0) pairs. Lengths are drawn from length_range,
    which defaults to epsilon up to twice the largest C, and samples
    outside T(epsilon) are rejected and drawn again. Each accepted sample
    is twisted into [-l/2, l/2] and tested against the boxes. A sample
    that misses them is marked again with its systole curve as the pants
    curve, and counts as covered when that marking lands in a box.
    """
    if enumeration is None:
        enumeration = EnumerationConfig(max_word_length=8)
    chart = standard_chart(1, 1)
    family = tuple(
        BersBox(chart, C, theta0, epsilon) for C, theta0 in boxes
    )
    low = epsilon if length_range[0] is None else length_range[0]
    if length_range[1] is None:
        high = 2*max(box.C for box in family)
    else:
        high = length_range[1]
    accepted: List[FNPoint] = []
    n_rejected = 0
    max_attempts = 50*n_samples
    while len(accepted) < n_samples:
        if len(accepted) + n_rejected >= max_attempts:
            raise RuntimeError(
                f'Only {len(accepted)} of {n_samples} samples in the thick '
                f'part after {max_attempts} attempts'
            )
        x = FNPoint(
            chart,
            (rng.uniform(low, high),),
            (rng.uniform(-twist_range, twist_range),),
        )
        if in_truncated(x, epsilon, enumeration):
            accepted.append(x)
        else:
            n_rejected += 1

    n_direct = 0
    n_remarked = 0
    uncovered = []
    for x in accepted:
        _, y = reduce_twists(x)
        if any(in_bers_box(y, box) for box in family):
            n_direct += 1
            continue
        value, _ = systole(y, enumeration)
        if _covered_after_remarking(value, family):
            n_remarked += 1
        else:
            uncovered.append(x)
    logger.debug(
        'Cover check: %d direct, %d remarked, %d uncovered',
        n_direct, n_remarked, len(uncovered)
    )
    return CoverReport(
        epsilon=epsilon,
        boxes=family,
        n_samples=n_samples,
        n_rejected=n_rejected,
        n_direct=n_direct,
        n_remarked=n_remarked,
        uncovered=tuple(uncovered),
    )


# Points on length-equality loci with the relations that define them.
SYMMETRIC_LOCI: Dict[str, Dict[str, Any]] = {
    'square': {
        'surface': (1, 1),
        'lengths': (2*np.arcsinh(1.0),),
        'twists': (0.0,),
        'relations': (('a', 'b'),),
    },
    'hexagonal': {
        'surface': (1, 1),
        'lengths': (2*np.arccosh(1.5),),
        'twists': (-np.arccosh(1.5),),
        'relations': (('a', 'b'), ('a', 'ab')),
    },
    'tied_cusps': {
        'surface': (1, 2),
        'lengths': (0.02, 0.02),
        'twists': (0.003, -0.004),
        'relations': (('a', 'abAB'),),
    },
    'handle_swap': {
        'surface': (2, 0),
        'lengths': (0.03, 0.03, 1.0),
        'twists': (0.01, 0.01, 0.2),
        'relations': (('a', 'c'),),
    },
}


def locus_point(name: str) -> Tuple[FNPoint, Tuple[Tuple[str, str], ...]]:
    """Preset point on a symmetric locus and its length relations."""
    if name not in SYMMETRIC_LOCI:
        raise KeyError(
            f'Unknown locus {name!r}, choose from {sorted(SYMMETRIC_LOCI)}'
        )
    locus = SYMMETRIC_LOCI[name]
    chart = standard_chart(*locus['surface'])
    x = FNPoint(chart, locus['lengths'], locus['twists'])
    return x, locus['relations']
