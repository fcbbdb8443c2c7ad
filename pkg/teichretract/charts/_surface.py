from dataclasses import dataclass
from ..errors import InvalidChartError

# Surface types with a holonomy layout.
SUPPORTED_SURFACES = ((1, 1), (0, 4), (1, 2), (2, 0))


@dataclass(frozen=True)
class SurfaceType:
    """Topological type of a surface of genus g with n punctures."""

    genus: int
    punctures: int

    def __post_init__(self):
        for name in ('genus', 'punctures'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidChartError(
                    f'{name} must be an integer, got {value!r}'
                )
            if value < 0:
                raise InvalidChartError(f'{name} must be nonnegative')
        if 2*self.genus + self.punctures <= 2:
            raise InvalidChartError(
                f'Surface of type {self.label} does not have negative '
                'Euler characteristic'
            )

    @property
    def label(self) -> str:
        return f'({self.genus},{self.punctures})'

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2*self.genus - self.punctures

    @property
    def n_pants_curves(self) -> int:
        """Number of curves in a pants decomposition."""
        return 3*self.genus - 3 + self.punctures

    @property
    def n_pants(self) -> int:
        """Number of pairs of pants in a pants decomposition."""
        return -self.euler_characteristic

    @property
    def dimension(self) -> int:
        """Real dimension of Teichmuller space."""
        return 6*self.genus - 6 + 2*self.punctures

    @property
    def is_supported(self) -> bool:
        return (self.genus, self.punctures) in SUPPORTED_SURFACES

    @classmethod
    def from_label(cls, label: str) -> 'SurfaceType':
        """Parse labels like '(1,2)' or '1,2'."""
        parts = label.strip().strip('()').split(',')
        if len(parts) != 2:
            raise InvalidChartError(f'Cannot parse surface type {label!r}')
        try:
            genus, punctures = (int(part) for part in parts)
        except ValueError as err:
            raise InvalidChartError(
                f'Cannot parse surface type {label!r}'
            ) from err
        return cls(genus, punctures)
