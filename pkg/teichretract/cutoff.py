"""
Smooth cutoff shared by the field and the flow.
"""
import numpy as np


def smoothstep(s):
    """Quintic smoothstep 6s^5 - 15s^4 + 10s^3, clipped to [0, 1]."""
    s = np.clip(s, 0.0, 1.0)
    return s**3*(s*(6*s - 15) + 10)


def cutoff_phi(length, epsilon: float):
    """Equal to 1 for length <= 2 epsilon and 0 for length >= 3 epsilon.

    Nonincreasing and twice continuously differentiable.
    """
    if epsilon <= 0:
        raise ValueError(f'epsilon must be positive, got {epsilon}')
    value = smoothstep((3*epsilon - np.asarray(length, dtype=float))/epsilon)
    if np.ndim(value) == 0:
        return float(value)
    return value


def ramp(length, epsilon: float):
    """Target derivative of a short curve, tapering from 2 eps to 3 eps."""
    return cutoff_phi(length, epsilon)
