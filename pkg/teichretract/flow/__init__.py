"""
The cutoff, the flow of the retraction field and the retraction.
"""

from ._config import FlowConfig, INTEGRATORS
from ._trajectory import Trajectory
from ._flow import flow, retract
from ..cutoff import cutoff_phi, ramp

__all__ = [
    "FlowConfig",
    "INTEGRATORS",
    "Trajectory",
    "flow",
    "retract",
    "cutoff_phi",
    "ramp",
]
