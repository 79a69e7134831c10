"""
hermlab.geometry.connections

Chern connection and torsion, the tensor γ, the Gauduchon line θᵗ = θ + tγ and the
Riemannian blocks θ₁, θ₂, all in a unitary coframe.

Connection matrices follow ∇e_i = Σ_j θ_{ij} e_j, so the first structure equation
reads dφ = −ᵗθ∧φ + τ. Torsion components satisfy τ_k = Σ_{i,j} T^k_{ij} φ_i∧φ_j and
are stored as ``T[k, i, j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from ..core.errors import FrameError, InvariantViolation
from ..core.logging import get_logger
from .exterior import (
    Form,
    FormMatrix,
    FrameAlgebra,
    evaluate,
    matrix_add,
    matrix_norm,
    matrix_scale,
    one_form_vector,
    partial,
    two_form_array,
)
from .hermitian import kahler_power

logger = get_logger(__name__)


class ConnectionKind(str, Enum):
    """Which connection a matrix of 1-forms (or its curvature) represents."""

    CHERN = "chern"
    GAUDUCHON = "gauduchon"
    STROMINGER = "strominger"
    RIEMANNIAN_BLOCK1 = "riemannian_block1"
    RIEMANNIAN_BLOCK2 = "riemannian_block2"

    @property
    def skew_symmetric(self) -> bool:
        return self is ConnectionKind.RIEMANNIAN_BLOCK2

    @property
    def hermitian(self) -> bool:
        """Connections on the Gauduchon line; these admit covariant derivatives."""
        return self in (
            ConnectionKind.CHERN,
            ConnectionKind.GAUDUCHON,
            ConnectionKind.STROMINGER,
        )


def kind_for_parameter(t: float) -> ConnectionKind:
    if t == 0:
        return ConnectionKind.CHERN
    if t == 2:
        return ConnectionKind.STROMINGER
    return ConnectionKind.GAUDUCHON


@dataclass(frozen=True)
class ConnectionForm:
    """n×n matrix of 1-forms tagged with its connection kind and Gauduchon parameter."""

    kind: ConnectionKind
    entries: FormMatrix
    t: Optional[float] = None

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> Form:
        i, j = index
        return self.entries[i][j]

    def coefficients(self) -> np.ndarray:
        """c[p, r, d] = θ_{pr}(dir_d)."""
        n = self.n
        c = np.zeros((n, n, 2 * n), dtype=complex)
        for p in range(n):
            for r in range(n):
                c[p, r] = one_form_vector(self.entries[p][r])
        return c

    def conjugate_coefficients(self) -> np.ndarray:
        """conj(θ_{pr})(dir_d), the coefficients acting on barred frame vectors."""
        return np.conj(np.roll(self.coefficients(), self.n, axis=2))

    def skew_residual(self) -> float:
        """‖θ + ᵗθ‖ for block 2, ‖θ + θ*‖ otherwise."""
        n = self.n
        total = 0.0
        for i in range(n):
            for j in range(n):
                partner = self.entries[j][i]
                if not self.kind.skew_symmetric:
                    partner = partner.conjugate()
                total += (self.entries[i][j] + partner).norm() ** 2
        return float(np.sqrt(total))

    def norm(self) -> float:
        return matrix_norm(self.entries)


@dataclass(frozen=True, eq=False)
class TorsionTensor:
    """Chern torsion components T^k_{ij} = T[k, i, j] and Gauduchon's η_j."""

    components: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        t = np.array(self.components, dtype=complex)
        if np.abs(t + t.transpose(0, 2, 1)).max(initial=0.0) > 0.0:
            raise InvariantViolation("Torsion components must be skew in (i, j)")
        eta = np.array(self.eta, dtype=complex)
        if not np.array_equal(eta, np.einsum("iij->j", t)):
            raise InvariantViolation("η must be the trace Σ_i T^i_{ij}")
        t.setflags(write=False)
        eta.setflags(write=False)
        object.__setattr__(self, "components", t)
        object.__setattr__(self, "eta", eta)

    @classmethod
    def from_components(cls, components: np.ndarray) -> "TorsionTensor":
        t = np.asarray(components, dtype=complex)
        t = 0.5 * (t - t.transpose(0, 2, 1))
        return cls(t, np.einsum("iij->j", t))

    @property
    def n(self) -> int:
        return self.components.shape[0]

    def eta_form(self) -> Form:
        """η = Σ_j η_j φ_j."""
        return Form(self.n, {(j,): c for j, c in enumerate(self.eta)})

    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.components) ** 2))


def _require_unitary(a: FrameAlgebra) -> None:
    if not a.unitary:
        raise FrameError(
            f"Algebra '{a.name or 'unnamed'}' is not in a unitary coframe; call unitary_reduce first"
        )


def chern_connection(a: FrameAlgebra) -> Tuple[ConnectionForm, List[Form]]:
    """
    Solve the first structure equation for the Chern connection.

    θ^{0,1}_{jk} is read off the (1,1) part of dφ_k, the (1,0) part closes it to a
    skew-Hermitian matrix and τ_k collects what remains of type (2,0).
    :param a: Unitary algebra.
    :return: (θ, τ) with τ a list of (2,0)-forms.
    :raises FrameError: If the coframe is not unitary.
    """
    _require_unitary(a)
    n = a.n
    lower = [
        [Form(n, {(n + l,): a.dphi11[k, j, l] for l in range(n)}) for k in range(n)]
        for j in range(n)
    ]
    entries = tuple(
        tuple(lower[j][k] - lower[k][j].conjugate() for k in range(n)) for j in range(n)
    )
    tau = []
    for k in range(n):
        t = a.differential(k).type_part(2, 0)
        for j in range(n):
            t = t + entries[j][k].type_part(1, 0).wedge(Form.phi(n, j))
        tau.append(t)
    theta = ConnectionForm(ConnectionKind.CHERN, entries, t=0.0)
    logger.debug("Chern connection solved for %s (‖θ‖=%.3e)", a.name or "algebra", theta.norm())
    return theta, tau


def chern_structure_residual(a: FrameAlgebra, theta: ConnectionForm, tau: List[Form]) -> float:
    """Norm of dφ + ᵗθ∧φ − τ over all k."""
    total = 0.0
    for k in range(a.n):
        r = a.differential(k) - tau[k]
        for j in range(a.n):
            r = r + theta[j, k].wedge(Form.phi(a.n, j))
        total += r.norm() ** 2
    return float(np.sqrt(total))


def torsion_components(tau: List[Form]) -> TorsionTensor:
    """T^k_{ij} = ½ τ_k(e_i, e_j) and η_j = Σ_i T^i_{ij}."""
    n = len(tau)
    t = np.zeros((n, n, n), dtype=complex)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if i != j:
                    t[k, i, j] = 0.5 * evaluate(tau[k], (i, j))
    return TorsionTensor(t, np.einsum("iij->j", t))


def gamma(torsion: TorsionTensor) -> FormMatrix:
    """γ_{ij} = Σ_k (T^j_{ik} φ_k − conj(T^i_{jk}) φ̄_k)."""
    n = torsion.n
    t = torsion.components
    return tuple(
        tuple(
            Form(n, {(k,): t[j, i, k] for k in range(n)})
            + Form(n, {(n + k,): -np.conj(t[i, j, k]) for k in range(n)})
            for j in range(n)
        )
        for i in range(n)
    )


def theta2(torsion: TorsionTensor) -> ConnectionForm:
    """(θ₂)_{ij} = Σ_k conj(T^k_{ij}) φ_k."""
    n = torsion.n
    t = torsion.components
    entries = tuple(
        tuple(Form(n, {(k,): np.conj(t[k, i, j]) for k in range(n)}) for j in range(n))
        for i in range(n)
    )
    return ConnectionForm(ConnectionKind.RIEMANNIAN_BLOCK2, entries)


def gamma_torsion_residual(g: FormMatrix, tau: List[Form]) -> float:
    """Norm of ᵗγ′∧φ + τ."""
    n = len(tau)
    total = 0.0
    for k in range(n):
        r = tau[k]
        for j in range(n):
            r = r + g[j][k].type_part(1, 0).wedge(Form.phi(n, j))
        total += r.norm() ** 2
    return float(np.sqrt(total))


def trace_gamma_prime(g: FormMatrix) -> Form:
    n = len(g)
    out = Form.zero(n)
    for i in range(n):
        out = out + g[i][i].type_part(1, 0)
    return out


def gauduchon_connection(theta: ConnectionForm, g: FormMatrix, t: float) -> ConnectionForm:
    """
    θᵗ = θ + tγ; t = 0 is the Chern connection and t = 2 the Strominger connection.
    :param theta: Chern connection.
    :param g: The tensor γ in the same frame.
    :param t: Any real parameter.
    """
    if theta.kind is not ConnectionKind.CHERN:
        raise InvariantViolation(f"Gauduchon line starts from the Chern connection, got {theta.kind}")
    entries = matrix_add(theta.entries, matrix_scale(float(t), g))
    return ConnectionForm(kind_for_parameter(t), entries, t=float(t))


def strominger_connection(theta: ConnectionForm, g: FormMatrix) -> ConnectionForm:
    return gauduchon_connection(theta, g, 2.0)


def riemannian_blocks(
    theta: ConnectionForm, g: FormMatrix, block2: ConnectionForm
) -> Tuple[ConnectionForm, ConnectionForm]:
    """(θ₁, θ₂) with θ₁ = θ + γ."""
    block1 = ConnectionForm(ConnectionKind.RIEMANNIAN_BLOCK1, matrix_add(theta.entries, g))
    return block1, block2


def riemannian_structure_residual(
    a: FrameAlgebra, block1: ConnectionForm, block2: ConnectionForm
) -> float:
    """Norm of dφ + ᵗθ₁∧φ + ᵗθ₂∧φ̄."""
    n = a.n
    total = 0.0
    for k in range(n):
        r = a.differential(k)
        for j in range(n):
            r = r + block1[j, k].wedge(Form.phi(n, j)) + block2[j, k].wedge(Form.phibar(n, j))
        total += r.norm() ** 2
    return float(np.sqrt(total))


def gauduchon_torsion(torsion: TorsionTensor, t: float) -> np.ndarray:
    """
    Torsion of ∇ᵗ as an array Tt[a, b, c]: the dir_c component of Tᵗ(dir_a, dir_b).

    Tᵗ(e_i, e_j) = (2−2t) Σ_k T^k_{ij} e_k and
    Tᵗ(e_i, ē_j) = t Σ_k (conj(T^i_{kj}) e_k − T^j_{ki} ē_k); the remaining blocks
    follow from antisymmetry and reality.
    """
    n = torsion.n
    tc = torsion.components
    out = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    out[:n, :n, :n] = (2.0 - 2.0 * t) * tc.transpose(1, 2, 0)
    out[:n, n:, :n] = t * np.conj(tc.transpose(0, 2, 1))
    out[:n, n:, n:] = -t * tc.transpose(2, 0, 1)
    out[n:, :n, :] = -out[:n, n:, :].transpose(1, 0, 2)
    out[n:, n:, :] = np.conj(np.roll(out[:n, :n, :], n, axis=2))
    return out


def lower_last_index(tensor: np.ndarray) -> np.ndarray:
    """Contract the last (vector) slot with the complexified identity metric."""
    n = tensor.shape[-1] // 2
    return np.roll(tensor, n, axis=-1)


def torsion_skew_residual(tt: np.ndarray) -> float:
    """max |⟨T(X,Y),Z⟩ + ⟨T(X,Z),Y⟩| over frame triples."""
    low = lower_last_index(tt)
    return float(np.abs(low + low.transpose(0, 2, 1)).max(initial=0.0))


def connection_torsion(a: FrameAlgebra, theta: ConnectionForm) -> np.ndarray:
    """
    Torsion array read off the structure equation of an arbitrary Hermitian connection:
    φ_k(T(X,Y)) = (dφ_k + Σ_j θ_{jk}∧φ_j)(X,Y), and its conjugate for φ̄_k.
    """
    n = a.n
    out = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    for k in range(n):
        form = a.differential(k)
        for j in range(n):
            form = form + theta[j, k].wedge(Form.phi(n, j))
        if form.is_zero():
            continue
        values = two_form_array(form)
        out[:, :, k] = values
        out[:, :, n + k] = np.conj(np.roll(values, n, axis=(0, 1)))
    return out


def balanced_identity_check(a: FrameAlgebra, torsion: TorsionTensor) -> float:
    """‖∂ω^{n−1} + 2η∧ω^{n−1}‖; vanishes on every unitary input."""
    omega_top = kahler_power(a, a.n - 1)
    return (partial(a, omega_top) + torsion.eta_form().wedge(omega_top) * 2.0).norm()
