import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple
import numpy as np
from ._words import Word, is_primitive
from ._curves import CurveClass, ShortSet, sorted_entries
from ._holonomy import (
    Holonomy, ROUNDING_PER_LETTER, DEGENERACY_TOL, length_from_trace
)
from ..charts import Chart

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationConfig:
    """Settings for the search over words.

    max_word_length of None picks 12 for charts whose group has rank two
    and 8 otherwise.
    """

    max_word_length: Optional[int] = None
    convergence_check: bool = False
    use_collar_certificate: bool = True

    def __post_init__(self):
        if self.max_word_length is not None and self.max_word_length < 1:
            raise ValueError(
                f'max_word_length must be positive, got {self.max_word_length}'
            )

    def word_length(self, chart: Chart) -> int:
        if self.max_word_length is not None:
            return self.max_word_length
        return default_max_word_length(chart)

    def to_json(self) -> dict:
        return {
            'max_word_length': self.max_word_length,
            'convergence_check': self.convergence_check,
            'use_collar_certificate': self.use_collar_certificate,
        }


def default_max_word_length(chart: Chart) -> int:
    rank = {(1, 1): 2, (0, 4): 3, (1, 2): 3, (2, 0): 4}.get(
        (chart.surface.genus, chart.surface.punctures), 0
    )
    if chart.n_curves == 1 and rank == 2:
        return 12
    return 8


def _words_below(
    rep: Holonomy, trace_bound: float, max_word_length: int
) -> Iterator[Tuple[Word, float, float]]:
    """Cyclically reduced words with |trace| at most trace_bound.

    Breadth first over reduced words, one batch per first letter, with all
    words of a level multiplied at once. Yields (word, trace, error bound).
    """
    letters = rep.letter_matrices
    magnitudes = np.abs(letters)
    n_letters = len(letters)
    inverse = np.array([
        (letter + rep.rank) % n_letters for letter in range(n_letters)
    ])
    for first in range(n_letters):
        words = np.array([[first]], dtype=np.int8)
        products = letters[[first]]
        bounds = magnitudes[[first]]
        for length in range(1, max_word_length + 1):
            if length > 1:
                new_words, new_products, new_bounds = [], [], []
                for letter in range(n_letters):
                    mask = words[:, -1] != inverse[letter]
                    if not np.any(mask):
                        continue
                    extended = np.empty(
                        (int(mask.sum()), length), dtype=np.int8
                    )
                    extended[:, :-1] = words[mask]
                    extended[:, -1] = letter
                    new_words.append(extended)
                    new_products.append(products[mask] @ letters[letter])
                    new_bounds.append(bounds[mask] @ magnitudes[letter])
                words = np.concatenate(new_words)
                products = np.concatenate(new_products)
                bounds = np.concatenate(new_bounds)

            traces = products[:, 0, 0] + products[:, 1, 1]
            cyclic = words[:, -1] != inverse[words[:, 0]]
            keep = np.flatnonzero(cyclic & (np.abs(traces) <= trace_bound))
            errors = ROUNDING_PER_LETTER*length*(
                bounds[:, 0, 0] + bounds[:, 1, 1]
            )
            for row in keep:
                yield (
                    tuple(int(v) for v in words[row]),
                    float(traces[row]),
                    float(errors[row]),
                )


def enumerate_short_geodesics(
    rep: Holonomy,
    length_bound: float,
    max_word_length: Optional[int] = None
) -> ShortSet:
    """All primitive closed geodesics up to a length bound.

    Searches words of length at most max_word_length and always includes
    the pants curves within the bound. Classes are deduplicated by
    canonical word. Peripheral and trivial words are skipped silently,
    other words whose trace cannot be told apart from 2 are logged and
    skipped.
    """
    if not np.isfinite(length_bound):
        raise ValueError(f'Length bound must be finite, got {length_bound}')
    if max_word_length is None:
        max_word_length = default_max_word_length(rep.chart)
    x = rep.point
    if length_bound <= 0:
        return ShortSet(point=x, threshold=float(length_bound), entries=())

    found: Dict[Word, Tuple[CurveClass, float]] = {}
    for index, length in enumerate(x.lengths):
        if length <= length_bound:
            found[rep.pants_words[index]] = (CurveClass.pants(index), length)

    trace_bound = 2*np.cosh(length_bound/2)*(1 + 1e-12)
    degenerate: List[str] = []
    for word, trace, error in _words_below(
        rep, trace_bound, max_word_length
    ):
        canonical = rep.group.canonical(word)
        if not canonical or not is_primitive(canonical):
            continue
        if canonical in found or rep.pants_index(canonical) is not None:
            continue
        if rep.is_peripheral(canonical):
            continue
        if abs(trace) - error <= 2 + DEGENERACY_TOL:
            degenerate.append(rep.group.format(canonical))
            continue
        length = length_from_trace(trace)
        if length <= length_bound:
            curve = CurveClass(
                word=canonical, label=rep.group.format(canonical)
            )
            found[canonical] = (curve, length)

    if degenerate:
        logger.warning(
            'Skipped %d words with non-hyperbolic trace at %s: %s',
            len(set(degenerate)), rep, sorted(set(degenerate))[:10]
        )
    return ShortSet(
        point=x,
        threshold=float(length_bound),
        entries=sorted_entries(list(found.values())),
    )
