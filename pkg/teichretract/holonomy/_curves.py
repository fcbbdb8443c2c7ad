from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple
import numpy as np
from ._words import Word
from ..charts import FNPoint


@dataclass(frozen=True)
class CurveClass:
    """Free homotopy class of a closed curve.

    Either a pants curve of the chart, addressed by index, or a canonical
    cyclically reduced word in the generators of the holonomy.
    """

    pants_index: Optional[int] = None
    word: Optional[Word] = None
    label: str = ''

    def __post_init__(self):
        if (self.pants_index is None) == (self.word is None):
            raise ValueError('Give exactly one of pants_index or word')
        if not self.label:
            if self.pants_index is not None:
                label = f'pants{self.pants_index}'
            else:
                label = 'word' + ','.join(map(str, self.word or ()))
            object.__setattr__(self, 'label', label)

    @classmethod
    def pants(cls, index: int) -> 'CurveClass':
        return cls(pants_index=int(index))

    @property
    def is_pants(self) -> bool:
        return self.pants_index is not None

    @property
    def sort_key(self) -> Tuple:
        if self.pants_index is not None:
            return (0, self.pants_index)
        word = self.word or ()
        return (1, len(word), word)

    def to_json(self) -> Dict[str, Any]:
        if self.pants_index is not None:
            return {'pants_index': self.pants_index}
        return {'word': self.label}


@dataclass(frozen=True)
class ShortSet:
    """Closed geodesics at a point with length at most a threshold."""

    point: FNPoint
    threshold: float
    entries: Tuple[Tuple[CurveClass, float], ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_empty(self) -> bool:
        return len(self.entries) == 0

    @property
    def curves(self) -> List[CurveClass]:
        return [curve for curve, _ in self.entries]

    @property
    def lengths(self) -> np.ndarray:
        return np.array([length for _, length in self.entries], dtype=float)

    @property
    def all_pants(self) -> bool:
        return all(curve.is_pants for curve, _ in self.entries)

    @property
    def pants_indices(self) -> List[int]:
        return [
            curve.pants_index for curve, _ in self.entries
            if curve.pants_index is not None
        ]

    @property
    def min_length(self) -> float:
        if self.is_empty:
            return np.inf
        return float(self.entries[0][1])

    def to_json(self) -> Dict[str, Any]:
        return {
            'threshold': self.threshold,
            'entries': [
                {'curve': curve.to_json(), 'length': length}
                for curve, length in self.entries
            ],
        }


def sorted_entries(
    entries: List[Tuple[CurveClass, float]]
) -> Tuple[Tuple[CurveClass, float], ...]:
    return tuple(sorted(
        entries, key=lambda entry: (entry[1], entry[0].sort_key)
    ))
