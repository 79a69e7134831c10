"""
hermlab.geometry

Exterior algebra, Hermitian metrics, connections, curvature and tensor calculus over
invariant coframes.
"""

from .exterior import Form, FrameAlgebra
from .hermitian import HermitianMetric
from .structure import HermitianStructure

__all__ = ["Form", "FrameAlgebra", "HermitianMetric", "HermitianStructure"]
