from dataclasses import dataclass
import numpy as np


@dataclass(frozen=True, eq=False)
class _FNComponents:
    """Components along the lengths and twists of a chart."""

    length: np.ndarray
    twist: np.ndarray

    def __post_init__(self):
        length = np.array(self.length, dtype=float)
        twist = np.array(self.twist, dtype=float)
        if length.shape != twist.shape:
            raise ValueError(
                f'Length and twist parts differ in shape: '
                f'{length.shape} vs {twist.shape}'
            )
        if not (np.all(np.isfinite(length)) and np.all(np.isfinite(twist))):
            raise ValueError('Components must be finite')
        object.__setattr__(self, 'length', length)
        object.__setattr__(self, 'twist', twist)

    @classmethod
    def zeros(cls, d: int):
        return cls(np.zeros(d), np.zeros(d))

    @classmethod
    def from_array(cls, array: np.ndarray):
        d = len(array)//2
        return cls(array[:d], array[d:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.length, self.twist])

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def to_json(self) -> dict:
        return {'length': self.length.tolist(), 'twist': self.twist.tolist()}


class Covector(_FNComponents):
    """Components dual to the coordinate basis (dl_i, dtheta_i)."""

    @classmethod
    def unit_length(cls, d: int, index: int) -> 'Covector':
        length = np.zeros(d)
        length[index] = 1.0
        return cls(length, np.zeros(d))


class TangentVector(_FNComponents):
    """Components in the coordinate basis (d/dl_i, d/dtheta_i)."""

    def __add__(self, other: 'TangentVector') -> 'TangentVector':
        return TangentVector(
            self.length + other.length, self.twist + other.twist
        )

    def __mul__(self, scalar: float) -> 'TangentVector':
        return TangentVector(scalar*self.length, scalar*self.twist)

    __rmul__ = __mul__


def pair(covector: Covector, vector: TangentVector) -> float:
    """Evaluate a covector on a tangent vector."""
    return float(
        covector.length @ vector.length + covector.twist @ vector.twist
    )
