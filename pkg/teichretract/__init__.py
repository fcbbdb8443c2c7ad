"""
Equivariant retraction of Teichmuller space onto its thick part.

Fenchel-Nielsen charts, holonomy and lengths of closed geodesics, the
systole, the retraction field and its flow, and the Dehn twist action.
"""

__version__ = '0.1.0'
