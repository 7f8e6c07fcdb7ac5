"""Bredon cohomology computations for projective spaces with cyclic group actions."""

from .errors import DomainError, ParseError, SectorError
from .reps import VirtualRep

__all__ = ["DomainError", "ParseError", "SectorError", "VirtualRep"]
__version__ = "0.1.0"
