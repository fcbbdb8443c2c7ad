import logging
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import numpy as np
from ._words import Word, WordGroup
from ._curves import CurveClass
from ._pieces import (
    sl2_inverse, torus_pair, pants_pair, glue, trace_for_length
)
from ..charts import FNPoint, validate_point
from ..errors import (
    ChartMismatchError, HolonomyError, InvalidChartError, NonHyperbolicError
)

logger = logging.getLogger(__name__)

TRACE_TOL = 1e-9
DEGENERACY_TOL = 1e-12

# Relative rounding error allowed per letter of a matrix product.
ROUNDING_PER_LETTER = 64*np.finfo(float).eps


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B @ sl2_inverse(A) @ sl2_inverse(B)


def _once_punctured_torus(lengths, twists) -> List[np.ndarray]:
    return list(torus_pair(lengths[0], twists[0]))


def _four_punctured_sphere(lengths, twists) -> List[np.ndarray]:
    a, b = pants_pair(0.0, 0.0, lengths[0])
    c, d = pants_pair(0.0, 0.0, lengths[0])
    (a, b), (c, d) = glue([a, b], a @ b, a, [c, d], c @ d, c, twists[0])
    return [a, b, c]


def _twice_punctured_torus(lengths, twists) -> List[np.ndarray]:
    A, B = torus_pair(lengths[0], twists[0], lengths[1])
    X, Y = pants_pair(0.0, 0.0, lengths[1])
    (A, B), (X, Y) = glue(
        [A, B], commutator(A, B), A, [X, Y], X @ Y, X, twists[1]
    )
    return [A, B, X]


def _closed_genus_two(lengths, twists) -> List[np.ndarray]:
    A, B = torus_pair(lengths[0], twists[0], lengths[2])
    C, D = torus_pair(lengths[1], twists[1], lengths[2])
    (A, B), (C, D) = glue(
        [A, B], commutator(A, B), A, [C, D], commutator(C, D), C, twists[2]
    )
    return [A, B, C, D]


@dataclass(frozen=True)
class Layout:
    """How to build the holonomy of a standard chart.

    Words are written in the generators returned by the builder. The
    Dehn twist maps give, per pants curve, the substitution of generators
    induced by the twist about that curve; unlisted generators are fixed.
    """

    rank: int
    relator: Optional[str]
    pants_words: Tuple[str, ...]
    peripheral_words: Tuple[str, ...]
    dehn_twists: Tuple[Dict[str, str], ...]
    builder: Callable[[Sequence[float], Sequence[float]], List[np.ndarray]]


LAYOUTS: Dict[Tuple[int, int], Layout] = {
    (1, 1): Layout(
        rank=2, relator=None,
        pants_words=('a',),
        peripheral_words=('abAB',),
        dehn_twists=({'b': 'ba'},),
        builder=_once_punctured_torus,
    ),
    (0, 4): Layout(
        rank=3, relator=None,
        pants_words=('ab',),
        peripheral_words=('a', 'b', 'c', 'abc'),
        dehn_twists=({'c': 'abcBA'},),
        builder=_four_punctured_sphere,
    ),
    (1, 2): Layout(
        rank=3, relator=None,
        pants_words=('a', 'abAB'),
        peripheral_words=('c', 'CbaBA'),
        dehn_twists=({'b': 'ba'}, {'c': 'abABcbaBA'}),
        builder=_twice_punctured_torus,
    ),
    (2, 0): Layout(
        rank=4, relator='abABcdCD',
        pants_words=('a', 'c', 'abAB'),
        peripheral_words=(),
        dehn_twists=(
            {'b': 'ba'},
            {'d': 'dc'},
            {'c': 'abABcbaBA', 'd': 'abABdbaBA'},
        ),
        builder=_closed_genus_two,
    ),
}


def layout_for(point_or_chart) -> Layout:
    chart = getattr(point_or_chart, 'chart', point_or_chart)
    key = (chart.surface.genus, chart.surface.punctures)
    if key not in LAYOUTS:
        raise InvalidChartError(
            f'Unsupported surface type {chart.surface.label}'
        )
    if not chart.is_standard:
        raise InvalidChartError(
            f'No holonomy layout for gluing {chart.gluing} '
            f'of surface {chart.surface.label}'
        )
    return LAYOUTS[key]


def twist_substitution(
    chart, index: int, count: int = 1
) -> Dict[str, str]:
    """Substitution of generators induced by count twists about a curve.

    Every listed image has the form P g Q with P and Q fixed by the
    twist, so count twists send g to P^count g Q^count.
    """
    layout = layout_for(chart)
    if not 0 <= index < len(layout.dehn_twists):
        raise ChartMismatchError(f'No pants curve {index}')
    if count == 0:
        return {}
    group = WordGroup(layout.rank, layout.relator)
    substitution = {}
    for name, image in layout.dehn_twists[index].items():
        split = image.index(name)
        prefix, suffix = image[:split], image[split + 1:]
        if count < 0:
            prefix = group.format(group.invert(group.parse(prefix)))
            suffix = group.format(group.invert(group.parse(suffix)))
        power = abs(count)
        substitution[name] = prefix*power + name + suffix*power
    return substitution


class Holonomy:
    """Representation of the surface group into SL(2,R), up to sign.

    Parameters
    ----------
    point : FNPoint
        The marked hyperbolic structure being represented.
    generators : np.ndarray
        Stack of shape (rank, 2, 2) of determinant one matrices.
    group : WordGroup
        Presentation the words are written in.
    pants_words : Sequence[Word]
        Word of each pants curve, indexed like the chart.
    peripheral_words : Sequence[Word]
        Word of a loop around each puncture.
    """

    def __init__(
        self,
        point: FNPoint,
        generators: np.ndarray,
        group: WordGroup,
        pants_words: Sequence[Word],
        peripheral_words: Sequence[Word]
    ):
        self.point = point
        self.generators = np.asarray(generators, dtype=float)
        self.group = group
        self.pants_words = tuple(pants_words)
        self.peripheral_words = tuple(peripheral_words)
        self._pants_lookup = {
            group.canonical(word): index
            for index, word in enumerate(self.pants_words)
        }
        self._peripheral_lookup = {
            group.canonical(word) for word in self.peripheral_words
        }

    def __repr__(self):
        return (
            f'Holonomy({self.point.chart.surface.label}, '
            f'lengths={self.point.lengths}, twists={self.point.twists})'
        )

    @property
    def chart(self):
        return self.point.chart

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def letter_matrices(self) -> np.ndarray:
        """Generators followed by their inverses."""
        return np.concatenate([
            self.generators, sl2_inverse(self.generators)
        ])

    def parse(self, text: str) -> Word:
        return self.group.parse(text)

    def matrix(self, word: Word) -> np.ndarray:
        letters = self.letter_matrices
        return reduce(
            np.matmul, (letters[letter] for letter in word), np.eye(2)
        )

    def trace(self, word: Word) -> float:
        return float(np.trace(self.matrix(word)))

    def rounding_bound(self, word: Word) -> float:
        """Bound on the rounding error of trace(word)."""
        magnitudes = np.abs(self.letter_matrices)
        product = reduce(
            np.matmul, (magnitudes[letter] for letter in word), np.eye(2)
        )
        return ROUNDING_PER_LETTER*max(len(word), 1)*float(np.trace(product))

    def pants_index(self, canonical: Word) -> Optional[int]:
        """Pants curve with the given canonical word, if any."""
        return self._pants_lookup.get(canonical)

    def is_peripheral(self, canonical: Word) -> bool:
        return canonical in self._peripheral_lookup

    def curve(self, text: str) -> CurveClass:
        """Curve class of a word given as text like 'abAB'."""
        canonical = self.group.canonical(self.parse(text))
        index = self.pants_index(canonical)
        if index is not None:
            return CurveClass.pants(index)
        return CurveClass(word=canonical, label=self.group.format(canonical))

    def check_invariants(self) -> Dict[str, np.ndarray]:
        """Trace residuals of the pants curves and puncture loops.

        Puncture loops are compared with trace 2 and pants curves with
        2 cosh(l/2). The 'pants' and 'peripheral' entries are what is left
        after subtracting the rounding bound of each product, the
        '_absolute' entries are the raw differences.
        """
        pants, pants_absolute = [], []
        for word, length in zip(self.pants_words, self.point.lengths):
            residual = abs(abs(self.trace(word)) - trace_for_length(length))
            pants_absolute.append(residual)
            pants.append(max(residual - self.rounding_bound(word), 0.0))
        peripheral, peripheral_absolute = [], []
        for word in self.peripheral_words:
            residual = abs(abs(self.trace(word)) - 2.0)
            peripheral_absolute.append(residual)
            peripheral.append(max(residual - self.rounding_bound(word), 0.0))
        return {
            'pants': np.array(pants),
            'peripheral': np.array(peripheral),
            'pants_absolute': np.array(pants_absolute),
            'peripheral_absolute': np.array(peripheral_absolute),
        }


def build_holonomy(x: FNPoint) -> Holonomy:
    """Holonomy representation of a point of a standard chart.

    Raises
    ------
    InvalidChartError
        If the chart has no holonomy layout.
    HolonomyError
        If the constructed matrices miss the trace invariants.
    """
    validate_point(x)
    layout = layout_for(x)
    twists = np.array(x.twists) - np.array(x.chart.twist_origin)
    generators = layout.builder(x.lengths, twists)
    group = WordGroup(layout.rank, layout.relator)
    rep = Holonomy(
        point=x,
        generators=np.array(generators),
        group=group,
        pants_words=[group.parse(word) for word in layout.pants_words],
        peripheral_words=[
            group.parse(word) for word in layout.peripheral_words
        ],
    )
    residuals = rep.check_invariants()
    worst = max(
        [float(np.max(residuals[key])) for key in ('pants', 'peripheral')
         if residuals[key].size]
        + [0.0]
    )
    if not np.isfinite(worst) or worst > TRACE_TOL:
        raise HolonomyError(
            f'Trace invariants violated by {worst:.3e} at {x.lengths}, '
            f'{x.twists}'
        )
    return rep


def length_from_trace(trace: float) -> float:
    magnitude = abs(trace)
    if magnitude <= 2 + DEGENERACY_TOL:
        raise NonHyperbolicError(
            f'Trace magnitude {magnitude} does not define a closed geodesic'
        )
    return float(2*np.arccosh(magnitude/2))


def curve_length(rep: Holonomy, c: CurveClass) -> float:
    """Length of the closed geodesic in a curve class.

    Pants curves return their Fenchel-Nielsen length directly.
    """
    if c.pants_index is not None:
        return rep.point.lengths[c.pants_index]
    trace = rep.trace(c.word or ())
    try:
        return length_from_trace(trace)
    except NonHyperbolicError:
        logger.warning('Curve %s is not hyperbolic at %s', c.label, rep)
        raise


def fricke_residual(rep: Holonomy, relative: bool = True) -> float:
    """Residual of the Fricke identity x^2 + y^2 + z^2 = xyz.

    Here x, y and z are the traces of a, b and ab on a once-punctured
    torus. With relative set the residual is divided by max(1, |xyz|),
    the size of the terms being cancelled.
    """
    if (rep.chart.surface.genus, rep.chart.surface.punctures) != (1, 1):
        raise InvalidChartError('Fricke identity needs a (1,1) chart')
    x = rep.trace(rep.parse('a'))
    y = rep.trace(rep.parse('b'))
    z = rep.trace(rep.parse('ab'))
    residual = abs(x**2 + y**2 + z**2 - x*y*z)
    if relative:
        return residual/max(1.0, abs(x*y*z))
    return residual
