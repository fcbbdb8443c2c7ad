"""
Dehn twists about pants curves and the checks built on them.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple
import numpy as np
from .charts import Chart, FNPoint, validate_point, check_same_chart
from .holonomy import (
    CurveClass, build_holonomy, curve_length, twist_substitution
)
from .flow import FlowConfig, flow, retract
from .systole import systole
from .errors import ChartMismatchError

logger = logging.getLogger(__name__)

EQUIVARIANCE_TOL = 1e-6
LOCUS_TOL = 1e-6
RELATION_TOL = 1e-9


@dataclass(frozen=True)
class MappingClass:
    """Product of Dehn twists about pants curves.

    Each factor (i, k) twists k times about pants curve i.
    """

    factors: Tuple[Tuple[int, int], ...] = ()
    chart: Optional[Chart] = None

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(
            (int(index), int(count)) for index, count in self.factors
        ))
        if self.chart is not None:
            self.check_indices(self.chart)

    @classmethod
    def identity(cls, chart: Optional[Chart] = None) -> 'MappingClass':
        return cls((), chart)

    @classmethod
    def twist(
        cls, index: int, count: int = 1, chart: Optional[Chart] = None
    ) -> 'MappingClass':
        return cls(((index, count),), chart)

    def check_indices(self, chart: Chart):
        for index, _ in self.factors:
            if not 0 <= index < chart.n_curves:
                raise ChartMismatchError(
                    f'Chart has {chart.n_curves} pants curves, '
                    f'no curve {index}'
                )

    def compose(self, other: 'MappingClass') -> 'MappingClass':
        """The mapping class applying other first, then self."""
        chart = self.chart if self.chart is not None else other.chart
        return MappingClass(other.factors + self.factors, chart)

    def inverse(self) -> 'MappingClass':
        return MappingClass(
            tuple((index, -count) for index, count in reversed(self.factors)),
            self.chart,
        )

    def net_counts(self, d: int) -> np.ndarray:
        counts = np.zeros(d, dtype=int)
        for index, count in self.factors:
            counts[index] += count
        return counts

    def to_json(self) -> List[List[int]]:
        return [[index, count] for index, count in self.factors]


def apply(mc: MappingClass, x: FNPoint) -> FNPoint:
    """Act on Fenchel-Nielsen coordinates: theta_i += k l_i."""
    if mc.chart is not None:
        check_same_chart(mc.chart, x)
    mc.check_indices(x.chart)
    counts = mc.net_counts(x.chart.n_curves)
    twists = list(x.twists)
    for index, count in enumerate(counts):
        if count != 0:
            twists[index] = twists[index] + count*x.lengths[index]
    return x.replace(twists=twists)


def twist_automorphism(chart: Chart, index: int) -> Dict[str, str]:
    """Substitution of generators induced by the twist about a curve."""
    return twist_substitution(chart, index)


def reduce_twists(x: FNPoint) -> Tuple[MappingClass, FNPoint]:
    """Twist every coordinate into [-l_i/2, l_i/2] by Dehn twists."""
    counts = np.floor(x.twist_array/x.length_array + 0.5).astype(int)
    mc = MappingClass(
        tuple((i, -int(k)) for i, k in enumerate(counts) if k != 0),
        x.chart,
    )
    return mc, apply(mc, x)


def fn_distance(x: FNPoint, y: FNPoint) -> float:
    check_same_chart(x.chart, y)
    return float(np.linalg.norm(x.coordinates - y.coordinates))


@dataclass(frozen=True)
class EquivarianceReport:
    mapping_class: MappingClass
    start: FNPoint
    retract_of_image: FNPoint
    image_of_retract: FNPoint
    error: float
    systole_difference: float
    tolerance: float = EQUIVARIANCE_TOL

    @property
    def passed(self) -> bool:
        return self.error <= self.tolerance

    def to_json(self) -> Dict[str, Any]:
        return {
            'mapping_class': self.mapping_class.to_json(),
            'start': {
                'lengths': list(self.start.lengths),
                'twists': list(self.start.twists),
            },
            'retract_of_image': {
                'lengths': list(self.retract_of_image.lengths),
                'twists': list(self.retract_of_image.twists),
            },
            'image_of_retract': {
                'lengths': list(self.image_of_retract.lengths),
                'twists': list(self.image_of_retract.twists),
            },
            'error': self.error,
            'systole_difference': self.systole_difference,
            'tolerance': self.tolerance,
            'passed': self.passed,
        }


def equivariance_check(
    mc: MappingClass, x0: FNPoint, cfg: Optional[FlowConfig] = None
) -> EquivarianceReport:
    """Compare retract(mc . x0) with mc . retract(x0)."""
    if cfg is None:
        cfg = FlowConfig()
    validate_point(x0)
    image = apply(mc, x0)
    retract_of_image = retract(image, cfg.epsilon, cfg)
    image_of_retract = apply(mc, retract(x0, cfg.epsilon, cfg))
    start_systole, _ = systole(x0, cfg.enumeration)
    image_systole, _ = systole(image, cfg.enumeration)
    report = EquivarianceReport(
        mapping_class=mc,
        start=x0,
        retract_of_image=retract_of_image,
        image_of_retract=image_of_retract,
        error=fn_distance(retract_of_image, image_of_retract),
        systole_difference=abs(image_systole - start_systole),
    )
    if not report.passed:
        logger.warning(
            'Equivariance error %.3e for %s at %s',
            report.error, mc.to_json(), x0.lengths
        )
    return report


@dataclass(frozen=True)
class LocusReport:
    relations: Tuple[Tuple[str, str], ...]
    max_deviation: float
    deviations: Tuple[float, ...] = field(default_factory=tuple)
    n_samples: int = 0
    tolerance: float = LOCUS_TOL

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_json(self) -> Dict[str, Any]:
        return {
            'relations': [list(pair) for pair in self.relations],
            'deviations': list(self.deviations),
            'max_deviation': self.max_deviation,
            'n_samples': self.n_samples,
            'tolerance': self.tolerance,
            'passed': self.passed,
        }


def _length(x: FNPoint, curve: CurveClass) -> float:
    if curve.pants_index is not None:
        return x.lengths[curve.pants_index]
    return curve_length(build_holonomy(x), curve)


def symmetric_locus_check(
    x0: FNPoint,
    relations: Sequence[Tuple[str, str]],
    cfg: Optional[FlowConfig] = None
) -> LocusReport:
    """Check that length equalities holding at x0 persist along the flow.

    Relations are pairs of words in the holonomy generators, for example
    ('a', 'b') on the once-punctured torus.
    """
    if cfg is None:
        cfg = FlowConfig()
    validate_point(x0)
    relations = tuple((str(a), str(b)) for a, b in relations)
    if not relations:
        return LocusReport(relations=(), max_deviation=0.0)

    rep = build_holonomy(x0)
    pairs = [(rep.curve(a), rep.curve(b)) for a, b in relations]
    for (a, b), (first, second) in zip(relations, pairs):
        gap = abs(_length(x0, first) - _length(x0, second))
        if gap > RELATION_TOL:
            raise ValueError(
                f'Curves {a} and {b} differ in length by {gap:.3e} at start'
            )

    trajectory = flow(x0, cfg)
    deviations = []
    for first, second in pairs:
        deviations.append(max(
            abs(_length(point, first) - _length(point, second))
            for point in trajectory.points
        ))
    return LocusReport(
        relations=relations,
        max_deviation=float(max(deviations)),
        deviations=tuple(deviations),
        n_samples=len(trajectory),
    )
