"""
hermlab.geometry.structure

Lazily evaluated pipeline bundling every derived quantity of one Hermitian input.
"""

from __future__ import annotations

from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np

from ..core.config import DEFAULT_TOLERANCE
from ..core.logging import get_logger
from .calculus import (
    DerivedTensors,
    derived_tensors,
    eta_derivative,
    lc_derivative_lee_form,
    torsion_derivative,
)
from .connections import (
    ConnectionForm,
    TorsionTensor,
    chern_connection,
    gamma,
    gauduchon_connection,
    riemannian_blocks,
    strominger_connection,
    theta2,
    torsion_components,
)
from .curvature import (
    CurvatureForm,
    curvature,
    curvature_components,
    riemannian_components,
    riemannian_curvature,
)
from .exterior import Form, FormMatrix, FrameAlgebra, ensure_valid
from .hermitian import HermitianMetric, unitary_reduce

logger = get_logger(__name__)


class HermitianStructure:
    """
    Invariant Hermitian structure in a unitary coframe.

    Every quantity is computed on first access and cached; the instance is
    immutable otherwise, so it can be shared between worker threads once warmed up.
    """

    def __init__(self, algebra: FrameAlgebra, seed: Optional[int] = None):
        if not algebra.unitary:
            algebra = unitary_reduce(algebra, HermitianMetric.identity(algebra.n))
        self.algebra = algebra
        self.seed = seed

    @classmethod
    def from_input(
        cls,
        algebra: FrameAlgebra,
        metric: Optional[HermitianMetric] = None,
        tol: float = DEFAULT_TOLERANCE,
        seed: Optional[int] = None,
    ) -> "HermitianStructure":
        """
        Validate an algebra and pass to a unitary coframe of the metric.
        :param algebra: Structure constants in any coframe.
        :param metric: Constant metric in that coframe; identity when omitted.
        :param tol: Relative validation tolerance.
        :raises AlgebraValidationError: If d² ≠ 0 or the structure is not integrable.
        :raises MetricError: If the metric does not fit the algebra.
        """
        sigma = algebra.structure_scale
        ensure_valid(algebra, tol * (1.0 + sigma**2))
        metric = metric if metric is not None else HermitianMetric.identity(algebra.n)
        unitary = unitary_reduce(algebra, metric)
        logger.debug(
            "Unitary reduction of %s done (σ=%.3e)", algebra.name or "algebra", unitary.structure_scale
        )
        return cls(unitary, seed=seed)

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def name(self) -> str:
        return self.algebra.name

    @property
    def scale(self) -> float:
        """σ, the largest structure constant of the unitary algebra."""
        return self.algebra.structure_scale

    @cached_property
    def _chern(self) -> Tuple[ConnectionForm, List[Form]]:
        return chern_connection(self.algebra)

    @property
    def chern(self) -> ConnectionForm:
        return self._chern[0]

    @property
    def tau(self) -> List[Form]:
        return self._chern[1]

    @cached_property
    def torsion(self) -> TorsionTensor:
        return torsion_components(self.tau)

    @cached_property
    def gamma(self) -> FormMatrix:
        return gamma(self.torsion)

    def gauduchon(self, t: float) -> ConnectionForm:
        """θᵗ = θ + tγ."""
        return gauduchon_connection(self.chern, self.gamma, t)

    @cached_property
    def strominger(self) -> ConnectionForm:
        return strominger_connection(self.chern, self.gamma)

    @cached_property
    def riemannian(self) -> Tuple[ConnectionForm, ConnectionForm]:
        """(θ₁, θ₂)."""
        return riemannian_blocks(self.chern, self.gamma, theta2(self.torsion))

    @cached_property
    def chern_curvature(self) -> CurvatureForm:
        return curvature(self.algebra, self.chern)

    @cached_property
    def strominger_curvature(self) -> CurvatureForm:
        return curvature(self.algebra, self.strominger)

    @cached_property
    def riemannian_curvature(self) -> Tuple[CurvatureForm, CurvatureForm]:
        return riemannian_curvature(self.algebra, *self.riemannian)

    @cached_property
    def chern_components(self) -> np.ndarray:
        """R^c[i, j, k, l]."""
        return curvature_components(self.chern_curvature)

    @cached_property
    def strominger_components(self) -> np.ndarray:
        """Rˢ[i, j, k, l]."""
        return curvature_components(self.strominger_curvature)

    @cached_property
    def riemann_components(self) -> np.ndarray:
        return riemannian_components(*self.riemannian_curvature)

    @cached_property
    def chern_torsion_derivative(self) -> np.ndarray:
        return torsion_derivative(self.torsion, self.chern)

    @cached_property
    def strominger_torsion_derivative(self) -> np.ndarray:
        return torsion_derivative(self.torsion, self.strominger)

    @cached_property
    def eta_derivative(self) -> np.ndarray:
        """η_{i,d} along ∇ˢ."""
        return eta_derivative(self.torsion, self.strominger)

    @cached_property
    def derived(self) -> DerivedTensors:
        return derived_tensors(self.torsion)

    @cached_property
    def lee_form_derivative(self) -> np.ndarray:
        return lc_derivative_lee_form(self.torsion, *self.riemannian)

    def warm_up(self) -> "HermitianStructure":
        """Evaluate the whole pipeline eagerly."""
        for attr in (
            "torsion",
            "strominger",
            "riemannian_curvature",
            "chern_components",
            "strominger_components",
            "riemann_components",
            "chern_torsion_derivative",
            "strominger_torsion_derivative",
            "eta_derivative",
            "derived",
            "lee_form_derivative",
        ):
            getattr(self, attr)
        return self
