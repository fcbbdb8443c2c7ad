"""
The systole, short sets, the thick part and truncated Bers regions.

A closed geodesic that is not a pants curve either crosses a pants curve,
and then traverses its whole collar, or is non-simple inside one pair of
pants. Both give a lower bound for its length, the collar floor. Below the
floor the short set is read off the chart coordinates and no words are
enumerated.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple
import numpy as np
from .charts import Chart, FNPoint, validate_point, check_same_chart
from .holonomy import (
    CurveClass, ShortSet, EnumerationConfig, WordGroup, build_holonomy,
    enumerate_short_geodesics, substitute, twist_substitution
)
from .holonomy._curves import sorted_entries
from .errors import EnumerationError

logger = logging.getLogger(__name__)

TIE_TOL = 1e-9
MEMBERSHIP_SLACK = 1e-12

# Shortest possible non-simple closed geodesic.
NON_SIMPLE_FLOOR = 4*np.arcsinh(1.0)


@dataclass(frozen=True)
class BersBox:
    """Truncated Bers region: eps <= l_i <= C and |theta_i| <= theta0."""

    chart: Chart
    C: float
    theta0: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not self.C > self.epsilon >= 0:
            raise ValueError(
                f'Need C > epsilon >= 0, got C={self.C}, '
                f'epsilon={self.epsilon}'
            )
        if not self.theta0 > 0:
            raise ValueError(f'Need theta0 > 0, got {self.theta0}')

    def to_json(self) -> Dict[str, Any]:
        return {'C': self.C, 'theta0': self.theta0, 'epsilon': self.epsilon}


def collar_floor(x: FNPoint) -> float:
    """Lower bound for the length of every non-pants closed geodesic."""
    longest = max(x.lengths)
    crossing = 2*np.arcsinh(1/np.sinh(longest/2))
    return float(min(NON_SIMPLE_FLOOR, crossing))


def _pants_entries(x: FNPoint, bound: float) -> Tuple:
    return sorted_entries([
        (CurveClass.pants(index), length)
        for index, length in enumerate(x.lengths)
        if length <= bound
    ])


def _twist_reduced(x: FNPoint) -> Tuple[FNPoint, np.ndarray]:
    """Point with twists brought near the origin by whole Dehn twists.

    Returns the reduced point and the number of twists removed per curve.
    """
    relative = x.twist_array - np.array(x.chart.twist_origin, dtype=float)
    counts = np.floor(relative/x.length_array + 0.5).astype(int)
    twists = x.twist_array - counts*x.length_array
    return x.replace(twists=twists), counts


def _remark(
    curve: CurveClass, group: WordGroup, substitutions: List[Dict[str, str]]
) -> CurveClass:
    if curve.word is None or not substitutions:
        return curve
    word = curve.word
    for substitution in substitutions:
        word = substitute(word, substitution, group)
    canonical = group.canonical(word)
    return CurveClass(word=canonical, label=group.format(canonical))


def _enumerate_checked(
    x: FNPoint, bound: float, cfg: EnumerationConfig
) -> ShortSet:
    reduced, counts = _twist_reduced(x)
    rep = build_holonomy(reduced)
    max_word_length = cfg.word_length(x.chart)
    logger.debug(
        'Enumerating words up to length %d below %g at %s',
        max_word_length, bound, rep
    )
    result = enumerate_short_geodesics(rep, bound, max_word_length)
    if cfg.convergence_check:
        longer = enumerate_short_geodesics(rep, bound, max_word_length + 2)
        if not np.array_equal(result.lengths, longer.lengths):
            raise EnumerationError(
                f'Short geodesics below {bound} changed when word length '
                f'grew from {max_word_length} to {max_word_length + 2}: '
                f'{result.lengths} vs {longer.lengths}'
            )
    # A word u at the reduced point is the curve sigma^-k(u) at x.
    substitutions = [
        twist_substitution(x.chart, index, -int(count))
        for index, count in enumerate(counts) if count != 0
    ]
    entries = sorted_entries([
        (_remark(curve, rep.group, substitutions), length)
        for curve, length in result.entries
    ])
    return ShortSet(point=x, threshold=result.threshold, entries=entries)


def short_set(
    x: FNPoint, t: float, cfg: Optional[EnumerationConfig] = None
) -> ShortSet:
    """Closed geodesics of length at most t."""
    validate_point(x)
    if cfg is None:
        cfg = EnumerationConfig()
    if t <= 0:
        return ShortSet(point=x, threshold=float(t), entries=())
    if cfg.use_collar_certificate and t < collar_floor(x):
        return ShortSet(
            point=x, threshold=float(t), entries=_pants_entries(x, t)
        )
    return _enumerate_checked(x, t, cfg)


def systole(
    x: FNPoint, cfg: Optional[EnumerationConfig] = None
) -> Tuple[float, List[CurveClass]]:
    """Length of the shortest closed geodesic and the curves realizing it.

    Curves within TIE_TOL of the minimum all count as realizers.
    """
    validate_point(x)
    if cfg is None:
        cfg = EnumerationConfig()
    shortest_pants = min(x.lengths)
    bound = shortest_pants + TIE_TOL
    if cfg.use_collar_certificate and bound < collar_floor(x):
        entries = _pants_entries(x, bound)
    else:
        entries = _enumerate_checked(x, bound, cfg).entries
    value = float(entries[0][1])
    realizers = [
        curve for curve, length in entries if length <= value + TIE_TOL
    ]
    return value, realizers


def in_truncated(
    x: FNPoint, epsilon: float, cfg: Optional[EnumerationConfig] = None
) -> bool:
    """Membership of the thick part T(epsilon), boundary included."""
    if epsilon <= 0:
        raise ValueError(f'epsilon must be positive, got {epsilon}')
    validate_point(x)
    if cfg is None:
        cfg = EnumerationConfig()
    if min(x.lengths) < epsilon - MEMBERSHIP_SLACK:
        return False
    if cfg.use_collar_certificate and collar_floor(x) >= epsilon:
        return True
    value, _ = systole(x, cfg)
    return value >= epsilon - MEMBERSHIP_SLACK


def in_bers_box(x: FNPoint, box: BersBox) -> bool:
    check_same_chart(box.chart, x)
    lengths = x.length_array
    twists = x.twist_array
    return bool(
        np.all(lengths >= box.epsilon)
        and np.all(lengths <= box.C)
        and np.all(np.abs(twists) <= box.theta0)
    )


def length_spectrum(
    x: FNPoint, bound: float, cfg: Optional[EnumerationConfig] = None
) -> np.ndarray:
    """Sorted lengths of all enumerated closed geodesics up to bound."""
    if cfg is None:
        cfg = EnumerationConfig()
    return _enumerate_checked(validate_point(x), bound, cfg).lengths


def systole_row(
    x: FNPoint,
    epsilon: float,
    cfg: Optional[EnumerationConfig] = None,
    box: Optional[BersBox] = None
) -> Dict[str, Any]:
    """Report row for one point."""
    value, realizers = systole(x, cfg)
    row: Dict[str, Any] = {}
    for i, length in enumerate(x.lengths):
        row[f'l_{i + 1}'] = length
    for i, twist in enumerate(x.twists):
        row[f'theta_{i + 1}'] = twist
    row['systole'] = value
    row['realizers'] = ';'.join(curve.label for curve in realizers)
    row['in_truncated'] = value >= epsilon - MEMBERSHIP_SLACK
    if box is not None:
        row['in_bers_box'] = in_bers_box(x, box)
    return row


__all__ = [
    'ShortSet', 'BersBox', 'collar_floor', 'short_set', 'systole',
    'in_truncated', 'in_bers_box', 'length_spectrum', 'systole_row',
    'TIE_TOL',
]
