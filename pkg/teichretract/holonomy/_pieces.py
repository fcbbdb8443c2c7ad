"""
Building blocks for holonomy representations.

Pairs of pants and one-holed tori are written down in companion form from
their boundary traces, then glued along a common boundary. Gluing
normalizes the boundary element of each piece to a diagonal matrix whose
axis is the imaginary axis, places the foot of the perpendicular from a
reference element of each piece at i, puts the two pieces on opposite
sides of the axis and translates the second piece along the axis by the
twist.
"""
from typing import List, Sequence, Tuple
import numpy as np
from ..errors import HolonomyError

HALF_TURN = np.array([[0.0, -1.0], [1.0, 0.0]])
MIRROR = np.array([[1.0, 0.0], [0.0, -1.0]])


def sl2_inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse of a determinant one matrix, also for stacks."""
    inverse = np.empty_like(matrix)
    inverse[..., 0, 0] = matrix[..., 1, 1]
    inverse[..., 0, 1] = -matrix[..., 0, 1]
    inverse[..., 1, 0] = -matrix[..., 1, 0]
    inverse[..., 1, 1] = matrix[..., 0, 0]
    return inverse


def trace_for_length(length: float) -> float:
    return 2*np.cosh(length/2)


def _larger_root(total: float) -> float:
    """Root s of s + 1/s = total with |s| >= 1 when total >= 2."""
    disc = total**2 - 4
    if disc < 0:
        raise HolonomyError(f'Trace {total} is not hyperbolic or parabolic')
    return (total + np.sign(total)*np.sqrt(disc))/2


def companion_pair(x: float, y: float, z: float) -> Tuple[np.ndarray, ...]:
    """Matrices X, Y with traces x, y and tr(XY) = z."""
    s = _larger_root(z)
    X = np.array([[x, -1.0], [1.0, 0.0]])
    Y = np.array([[0.0, s], [-1.0/s, y]])
    return X, Y


def pants_pair(
    first: float, second: float, third: float
) -> Tuple[np.ndarray, ...]:
    """Generators of a pair of pants from its boundary lengths.

    A length of zero is a cusp. The first two boundaries are the
    generators, the third is their product, with trace signs (+, +, -).
    """
    return companion_pair(
        trace_for_length(first),
        trace_for_length(second),
        -trace_for_length(third),
    )


def torus_traces(
    length: float, twist: float, boundary: float = 0.0
) -> Tuple[float, float, float]:
    """Traces of A, B, AB on a one-holed torus.

    The boundary [A, B] has length `boundary` (zero for a cusp) and trace
    -2 cosh(boundary/2). A has length `length`. Twisting by `length` maps
    the traces of (A, B) to those of (A, BA).
    """
    x = trace_for_length(length)
    scale = 2*np.sqrt(
        (np.cosh(length) + np.cosh(boundary/2))/(np.cosh(length) - 1)
    )
    y = scale*np.cosh(twist/2)
    z = scale*np.cosh((twist + length)/2)
    return x, y, z


def torus_pair(
    length: float, twist: float, boundary: float = 0.0
) -> Tuple[np.ndarray, ...]:
    return companion_pair(*torus_traces(length, twist, boundary))


def diagonalizer(matrix: np.ndarray) -> np.ndarray:
    """P in SL(2,R) such that P^-1 M P = diag(lambda, 1/lambda), |lambda|>1.
    """
    (p, q), (r, s) = matrix
    trace = p + s
    disc = trace**2 - 4
    if disc <= 0:
        raise HolonomyError(f'Boundary trace {trace} is not hyperbolic')
    big = (trace + np.sign(trace)*np.sqrt(disc))/2
    small = 1/big
    vectors = []
    for eigenvalue in (big, small):
        first = np.array([q, eigenvalue - p])
        second = np.array([eigenvalue - s, r])
        if np.linalg.norm(first) >= np.linalg.norm(second):
            vectors.append(first)
        else:
            vectors.append(second)
    P = np.column_stack(vectors)
    det = np.linalg.det(P)
    if det < 0:
        P[:, 1] *= -1
        det = -det
    return P/np.sqrt(det)


def conjugate(
    matrices: Sequence[np.ndarray], by: np.ndarray
) -> List[np.ndarray]:
    """Replace each M with g M g^-1."""
    by_inverse = np.linalg.inv(by)
    return [by @ matrix @ by_inverse for matrix in matrices]


def normalize_piece(
    generators: Sequence[np.ndarray],
    boundary: np.ndarray,
    reference: np.ndarray
) -> Tuple[List[np.ndarray], np.ndarray, float]:
    """Put a piece in standard position along its boundary.

    Returns the conjugated generators, the conjugated reference element and
    the side of the imaginary axis the reference element lies on.
    """
    P_inverse = sl2_inverse(diagonalizer(boundary))
    generators = conjugate(generators, P_inverse)
    (reference,) = conjugate([reference], P_inverse)

    (p, q), (r, s) = reference
    if r == 0 or -q/r <= 0:
        raise HolonomyError(
            'Reference element does not lie on one side of the boundary axis'
        )
    scale = np.sqrt(-q/r)
    shrink = np.diag([1/np.sqrt(scale), np.sqrt(scale)])
    generators = conjugate(generators, shrink)
    (reference,) = conjugate([reference], shrink)
    (p, q), (r, s) = reference
    return generators, reference, float(np.sign((p - s)/r))


def glue(
    first: Sequence[np.ndarray],
    first_boundary: np.ndarray,
    first_reference: np.ndarray,
    second: Sequence[np.ndarray],
    second_boundary: np.ndarray,
    second_reference: np.ndarray,
    twist: float
) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Glue two pieces along a boundary curve.

    The boundary element of the second piece must have the same trace as
    the boundary element of the first piece. After gluing it equals the
    inverse of the first, up to sign. A twist equal to the boundary length
    conjugates the second piece by the boundary element of the first.

    Parameters
    ----------
    first : Sequence[np.ndarray]
        Generators of the first piece.
    first_boundary : np.ndarray
        Image of the glued boundary in the first piece.
    first_reference : np.ndarray
        Element of the first piece disjoint from the boundary whose
        perpendicular to the boundary marks the zero twist.
    second, second_boundary, second_reference
        Same for the second piece.
    twist : float
        Signed twist along the boundary in length units.

    Returns
    -------
    first_generators, second_generators : List[np.ndarray]
        Generators of both pieces in the glued representation.
    """
    first_out, _, first_side = normalize_piece(
        first, first_boundary, first_reference
    )
    second_out, _, second_side = normalize_piece(
        second, second_boundary, second_reference
    )
    if second_side != first_side:
        second_out = conjugate(second_out, MIRROR)
    second_out = conjugate(second_out, HALF_TURN)
    translation = np.diag([np.exp(twist/2), np.exp(-twist/2)])
    second_out = conjugate(second_out, translation)
    return first_out, second_out
