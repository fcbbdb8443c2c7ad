import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import numpy as np
import networkx as nx
from ._surface import SurfaceType
from ..errors import InvalidChartError

logger = logging.getLogger(__name__)

PUNCTURE = 'p'

Slot = Union[int, str]
Piece = Tuple[Slot, Slot, Slot]

# Built-in pants decompositions, one per supported surface type.
STANDARD_GLUINGS: Dict[Tuple[int, int], Tuple[Piece, ...]] = {
    (1, 1): ((0, 0, PUNCTURE),),
    (0, 4): ((PUNCTURE, PUNCTURE, 0), (0, PUNCTURE, PUNCTURE)),
    (1, 2): ((0, 0, 1), (1, PUNCTURE, PUNCTURE)),
    (2, 0): ((0, 0, 2), (1, 1, 2)),
}


@dataclass(frozen=True)
class Chart:
    """Fenchel-Nielsen chart given by a pants decomposition.

    Each piece of the gluing lists its three boundary slots. A slot holds
    either the identifier of a pants curve or the puncture marker 'p'.
    Every curve fills exactly two slots, which is the involution pairing
    boundary components of the pants.
    """

    surface: SurfaceType
    gluing: Tuple[Piece, ...]
    twist_origin: Tuple[float, ...]

    @property
    def n_curves(self) -> int:
        return self.surface.n_pants_curves

    @property
    def pants_curves(self) -> Tuple[int, ...]:
        return tuple(range(self.n_curves))

    @property
    def dimension(self) -> int:
        return 2*self.n_curves

    @property
    def is_standard(self) -> bool:
        key = (self.surface.genus, self.surface.punctures)
        return STANDARD_GLUINGS.get(key) == self.gluing

    def curve_pieces(self, curve: int) -> Tuple[int, int]:
        """Indices of the two pants bounded by a curve."""
        pieces = [
            i_piece
            for i_piece, piece in enumerate(self.gluing)
            for slot in piece
            if slot == curve
        ]
        return pieces[0], pieces[1]

    def adjacency_graph(self) -> nx.MultiGraph:
        """Graph with a node per pants and an edge per pants curve."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(len(self.gluing)))
        for curve in self.pants_curves:
            graph.add_edge(*self.curve_pieces(curve), curve=curve)
        return graph

    def to_json(self) -> Dict[str, Any]:
        return {
            'surface': [self.surface.genus, self.surface.punctures],
            'gluing': [list(piece) for piece in self.gluing],
            'twist_origin': list(self.twist_origin),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'Chart':
        genus, punctures = data['surface']
        return make_chart(
            SurfaceType(genus, punctures), data['gluing'],
            twist_origin=data.get('twist_origin')
        )


def _parse_slot(slot: Any) -> Slot:
    if isinstance(slot, str):
        if slot.lower() != PUNCTURE:
            raise InvalidChartError(f'Unknown boundary slot {slot!r}')
        return PUNCTURE
    if isinstance(slot, (int, np.integer)) and not isinstance(slot, bool):
        if slot < 0:
            raise InvalidChartError(f'Negative curve identifier {slot}')
        return int(slot)
    raise InvalidChartError(f'Unknown boundary slot {slot!r}')


def _unordered(gluing) -> List[Tuple[str, ...]]:
    return sorted(tuple(sorted(map(str, piece))) for piece in gluing)


def make_chart(
    surface: SurfaceType,
    gluing: Sequence[Sequence[Any]],
    twist_origin: Optional[Sequence[float]] = None
) -> Chart:
    """Validate gluing data and return a chart.

    Curve identifiers are relabelled to 0, ..., d-1 in increasing order
    of the identifiers given. A gluing that differs from the built-in one
    only in the order of pieces or of slots within a piece is replaced by
    the built-in gluing.

    Parameters
    ----------
    surface : SurfaceType
        Type of the surface being decomposed.
    gluing : Sequence[Sequence[Any]]
        One entry of three boundary slots per pair of pants.
    twist_origin : Optional[Sequence[float]]
        Twist offset per curve subtracted before building holonomy.
        Zero if not given.

    Returns
    -------
    chart : Chart
        The validated chart.
    """
    d = surface.n_pants_curves
    pieces: List[Tuple[Slot, ...]] = []
    for i_piece, piece in enumerate(gluing):
        slots = tuple(_parse_slot(slot) for slot in piece)
        if len(slots) != 3:
            raise InvalidChartError(
                f'Piece {i_piece} is not a pair of pants: '
                f'it has {len(slots)} boundary slots'
            )
        pieces.append(slots)

    if len(pieces) != surface.n_pants:
        raise InvalidChartError(
            f'Surface {surface.label} needs {surface.n_pants} pants, '
            f'gluing has {len(pieces)}'
        )

    n_punctures = sum(slot == PUNCTURE for piece in pieces for slot in piece)
    if n_punctures != surface.punctures:
        raise InvalidChartError(
            f'Surface {surface.label} has {surface.punctures} punctures, '
            f'gluing has {n_punctures}'
        )

    curve_ids = sorted({
        slot for piece in pieces for slot in piece if slot != PUNCTURE
    }, key=int)
    if len(curve_ids) != d:
        raise InvalidChartError(
            f'Surface {surface.label} needs {d} pants curves, '
            f'gluing has {len(curve_ids)}'
        )
    for curve in curve_ids:
        count = sum(slot == curve for piece in pieces for slot in piece)
        if count != 2:
            raise InvalidChartError(
                f'Curve {curve} fills {count} boundary slots instead of 2'
            )

    relabel = {curve: i for i, curve in enumerate(curve_ids)}
    if any(curve != i for curve, i in relabel.items()):
        logger.debug('Relabelled curves %s', relabel)
    normalized = tuple(
        tuple(
            slot if slot == PUNCTURE else relabel[slot] for slot in piece
        )
        for piece in pieces
    )
    standard = STANDARD_GLUINGS.get((surface.genus, surface.punctures))
    if standard is not None and standard != normalized and (
        _unordered(standard) == _unordered(normalized)
    ):
        logger.debug('Reordered gluing %s to %s', normalized, standard)
        normalized = standard

    if twist_origin is None:
        origin = tuple(0.0 for _ in range(d))
    else:
        origin = tuple(float(value) for value in twist_origin)
        if len(origin) != d:
            raise InvalidChartError(
                f'twist_origin needs {d} entries, got {len(origin)}'
            )
        if not all(np.isfinite(origin)):
            raise InvalidChartError('twist_origin must be finite')

    chart = Chart(
        surface=surface,
        gluing=normalized,  # type: ignore
        twist_origin=origin,
    )
    if not nx.is_connected(chart.adjacency_graph()):
        raise InvalidChartError('Gluing does not produce a connected surface')
    return chart


def standard_chart(genus: int, punctures: int) -> Chart:
    """Built-in chart for a supported surface type."""
    key = (genus, punctures)
    if key not in STANDARD_GLUINGS:
        raise InvalidChartError(
            f'No standard chart for surface type ({genus},{punctures})'
        )
    return make_chart(SurfaceType(genus, punctures), STANDARD_GLUINGS[key])
