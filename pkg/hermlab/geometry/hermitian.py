"""
hermlab.geometry.hermitian

Hermitian metrics, constant coframe changes, unitary reduction and the Kähler form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Tuple

import numpy as np

from ..core.errors import FrameError, MetricError
from .exterior import Form, FrameAlgebra, wedge

if TYPE_CHECKING:
    from .connections import TorsionTensor


@dataclass(frozen=True, eq=False)
class HermitianMetric:
    """Constant metric with entries g_{ij̄} = ⟨e_i, ē_j⟩ in the given coframe."""

    g: np.ndarray

    def __post_init__(self):
        g = np.array(self.g, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise MetricError(f"Metric must be a square matrix, got shape {g.shape}")
        if np.abs(g - g.conj().T).max() > 1e-12 * (1.0 + np.abs(g).max()):
            raise MetricError("Metric is not Hermitian")
        smallest = float(np.linalg.eigvalsh(g).min())
        if smallest <= 0.0:
            raise MetricError(
                f"Metric is not positive definite (smallest eigenvalue {smallest:.3e})"
            )
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @classmethod
    def identity(cls, n: int) -> "HermitianMetric":
        return cls(np.eye(n, dtype=complex))

    @property
    def n(self) -> int:
        return self.g.shape[0]

    def cholesky(self) -> np.ndarray:
        """Lower-triangular L with positive diagonal and g = L L*."""
        return np.linalg.cholesky(self.g)


def change_coframe(a: FrameAlgebra, matrix: np.ndarray, unitary: bool = False) -> FrameAlgebra:
    """
    Rewrite the structure constants in the coframe ψ = M φ.
    :param matrix: Invertible n×n matrix M.
    :param unitary: Whether the new coframe is unitary for the metric of interest.
    :raises FrameError: If M has the wrong shape or is singular.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (a.n, a.n):
        raise FrameError(f"Coframe change must be {a.n}x{a.n}, got {m.shape}")
    try:
        inv = np.linalg.inv(m)
    except np.linalg.LinAlgError as e:
        raise FrameError("Coframe change matrix is singular") from e
    inv_bar = inv.conj()
    dphi20 = np.einsum("ak,kpq,pi,qj->aij", m, a.dphi20, inv, inv)
    dphi11 = np.einsum("ak,kpq,pi,qj->aij", m, a.dphi11, inv, inv_bar)
    dphi02 = np.einsum("ak,kpq,pi,qj->aij", m, a.dphi02, inv_bar, inv_bar)
    # exact skew symmetry survives the round trip only up to rounding
    dphi20 = 0.5 * (dphi20 - dphi20.transpose(0, 2, 1))
    dphi02 = 0.5 * (dphi02 - dphi02.transpose(0, 2, 1))
    return FrameAlgebra(a.n, dphi20, dphi11, dphi02, name=a.name, unitary=unitary)


def rotate(a: FrameAlgebra, u: np.ndarray, tol: float = 1e-10) -> FrameAlgebra:
    """
    Apply a constant unitary rotation ψ = U φ; unitarity of the coframe is preserved.
    :raises FrameError: If U is not unitary.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (a.n, a.n) or np.abs(u @ u.conj().T - np.eye(a.n)).max() > tol:
        raise FrameError("Rotation matrix must be unitary")
    return change_coframe(a, u, unitary=a.unitary)


def unitary_reduce(a: FrameAlgebra, g: HermitianMetric) -> FrameAlgebra:
    """
    Pass to the coframe ψ = ᵗL φ, g = L L*, in which the metric is the identity.

    With this choice Σ_k ψ_k∧ψ̄_k = Σ g_{ij̄} φ_i∧φ̄_j. Writing the coframe as
    ψ = L* φ instead is the same construction for the conjugate matrix ḡ = ᵗg,
    i.e. for the convention g_{ij̄} = ⟨e_j, ē_i⟩; both give a unitary coframe of
    the same metric. The identity metric gives L = I and leaves the constants
    untouched.
    :raises MetricError: If the metric dimension does not match.
    """
    if g.n != a.n:
        raise MetricError(f"Metric is {g.n}x{g.n} but the algebra has n={a.n}")
    if np.array_equal(g.g, np.eye(a.n)):
        return FrameAlgebra(a.n, a.dphi20, a.dphi11, a.dphi02, name=a.name, unitary=True)
    return change_coframe(a, g.cholesky().T, unitary=True)


def kahler_form(a: FrameAlgebra) -> Form:
    """ω = √−1 Σ φ_i∧φ̄_i in a unitary coframe."""
    n = a.n
    return Form(n, {(i, n + i): 1j for i in range(n)})


def volume_form(a: FrameAlgebra) -> Form:
    """Π_k (√−1 φ_k∧φ̄_k), which equals ωⁿ/n!."""
    n = a.n
    return wedge(*(Form(n, {(i, n + i): 1j}) for i in range(n)))


def kahler_power(a: FrameAlgebra, k: int) -> Form:
    """ω^k, cached on the algebra."""
    key = ("omega_power", k)
    cached = a._cache.get(key)
    if cached is None:
        omega = kahler_form(a)
        cached = Form.constant(a.n, 1.0)
        for _ in range(k):
            cached = cached.wedge(omega)
        a._cache[key] = cached
    return cached


def tensor_norms(torsion: "TorsionTensor") -> Tuple[float, float]:
    """(|T|², |η|²) with |T|² = Σ|T^j_{ik}|² and |η|² = Σ|η_i|²."""
    t = float(np.sum(np.abs(torsion.components) ** 2))
    e = float(np.sum(np.abs(torsion.eta) ** 2))
    return t, e


def volume_factorial(n: int) -> float:
    return float(math.factorial(n))
