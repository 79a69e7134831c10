"""
hermlab.geometry.curvature

Curvature matrices of the Gauduchon-line and Riemannian connections, their component
arrays, and residuals of the Bianchi identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..core.errors import InvariantViolation
from .connections import ConnectionForm, ConnectionKind
from .exterior import (
    Form,
    FormMatrix,
    FrameAlgebra,
    matrix_conjugate,
    matrix_d,
    matrix_norm,
    matrix_sub,
    matrix_type_part,
    matrix_wedge,
    partial,
    partial_bar,
    two_form_array,
    zero_matrix,
)
from .hermitian import kahler_form


@dataclass(frozen=True)
class CurvatureForm:
    """n×n matrix of 2-forms with the kind of the connection it was computed from."""

    kind: ConnectionKind
    entries: FormMatrix

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> Form:
        i, j = index
        return self.entries[i][j]

    def norm(self) -> float:
        return matrix_norm(self.entries)

    def type_part(self, p: int, q: int) -> FormMatrix:
        return matrix_type_part(self.entries, p, q)

    def components(self) -> np.ndarray:
        """full[a, b, k, l] = Θ_{kl}(dir_a, dir_b)."""
        n = self.n
        out = np.zeros((2 * n, 2 * n, n, n), dtype=complex)
        for k in range(n):
            for l in range(n):
                entry = self.entries[k][l]
                if not entry.is_zero():
                    out[:, :, k, l] = two_form_array(entry)
        return out

    def skew_residual(self) -> float:
        n = self.n
        total = 0.0
        for i in range(n):
            for j in range(n):
                partner = self.entries[j][i]
                if not self.kind.skew_symmetric:
                    partner = partner.conjugate()
                total += (self.entries[i][j] + partner).norm() ** 2
        return float(np.sqrt(total))


def curvature(a: FrameAlgebra, theta: ConnectionForm) -> CurvatureForm:
    """
    Θ = dθ − θ∧θ.
    :raises InvariantViolation: If a Chern curvature entry is not of type (1,1).
    """
    entries = matrix_sub(matrix_d(a, theta.entries), matrix_wedge(theta.entries, theta.entries))
    result = CurvatureForm(theta.kind, entries)
    if theta.kind is ConnectionKind.CHERN:
        leak = matrix_norm(matrix_sub(entries, result.type_part(1, 1)))
        if leak > 1e-8 * (1.0 + result.norm()):
            raise InvariantViolation(f"Chern curvature is not of type (1,1) (leak {leak:.3e})")
    return result


def curvature_type_leakage(big_theta: CurvatureForm) -> float:
    """Norm of the non-(1,1) part."""
    return matrix_norm(matrix_sub(big_theta.entries, big_theta.type_part(1, 1)))


def second_bianchi_residual(a: FrameAlgebra, theta: ConnectionForm, big_theta: CurvatureForm) -> float:
    """‖dΘ − θ∧Θ + Θ∧θ‖."""
    d_theta = matrix_d(a, big_theta.entries)
    rhs = matrix_sub(
        matrix_wedge(theta.entries, big_theta.entries),
        matrix_wedge(big_theta.entries, theta.entries),
    )
    return matrix_norm(matrix_sub(d_theta, rhs))


def riemannian_curvature(
    a: FrameAlgebra, block1: ConnectionForm, block2: ConnectionForm
) -> Tuple[CurvatureForm, CurvatureForm]:
    """
    Θ₁ = dθ₁ − θ₁∧θ₁ − θ̄₂∧θ₂ and Θ₂ = dθ₂ − θ₂∧θ₁ − θ̄₁∧θ₂.
    """
    t1, t2 = block1.entries, block2.entries
    t1_bar, t2_bar = matrix_conjugate(t1), matrix_conjugate(t2)
    big1 = matrix_sub(
        matrix_sub(matrix_d(a, t1), matrix_wedge(t1, t1)), matrix_wedge(t2_bar, t2)
    )
    big2 = matrix_sub(
        matrix_sub(matrix_d(a, t2), matrix_wedge(t2, t1)), matrix_wedge(t1_bar, t2)
    )
    return (
        CurvatureForm(ConnectionKind.RIEMANNIAN_BLOCK1, big1),
        CurvatureForm(ConnectionKind.RIEMANNIAN_BLOCK2, big2),
    )


def gray_residual(big2: CurvatureForm) -> float:
    """‖(Θ₂)^{0,2}‖."""
    return matrix_norm(big2.type_part(0, 2))


def curvature_components(big_theta: CurvatureForm) -> np.ndarray:
    """R^c_{ij̄kℓ̄} = Θ_{kℓ}(e_i, ē_j) as ``Rc[i, j, k, l]``."""
    n = big_theta.n
    return big_theta.components()[:n, n:, :, :]


def riemannian_components(big1: CurvatureForm, big2: CurvatureForm) -> np.ndarray:
    """
    Full Riemannian curvature R[a, b, c, d] = Σ_e Θ̂_{ce}(dir_a, dir_b) g_{ed}.

    Θ̂ is the 2n×2n block matrix [[Θ₁, Θ̄₂], [Θ₂, Θ̄₁]] and g pairs e_i with ē_i.
    """
    n = big1.n
    one = big1.components()
    two = big2.components()
    # conj(Θ)(X, Y) = conj(Θ(X̄, Ȳ))
    one_bar = np.conj(np.roll(one, n, axis=(0, 1)))
    two_bar = np.conj(np.roll(two, n, axis=(0, 1)))
    hat = np.zeros((2 * n, 2 * n, 2 * n, 2 * n), dtype=complex)
    hat[:, :, :n, :n] = one
    hat[:, :, :n, n:] = two_bar
    hat[:, :, n:, :n] = two
    hat[:, :, n:, n:] = one_bar
    return np.roll(hat, n, axis=3)


def pure_type_riemannian_residual(r: np.ndarray) -> float:
    """max(|R_{ijkℓ}|, |R_{īj̄k̄ℓ̄}|)."""
    n = r.shape[0] // 2
    return float(
        max(np.abs(r[:n, :n, :n, :n]).max(initial=0.0), np.abs(r[n:, n:, n:, n:]).max(initial=0.0))
    )


def first_bianchi_residual(
    a: FrameAlgebra, theta: ConnectionForm, tau: List[Form], big_theta: CurvatureForm
) -> float:
    """Norm of dτ + ᵗθ∧τ − ᵗΘ∧φ."""
    n = a.n
    total = 0.0
    for k in range(n):
        r = a.d(tau[k])
        for j in range(n):
            r = r + theta[j, k].wedge(tau[j]) - big_theta[j, k].wedge(Form.phi(n, j))
        total += r.norm() ** 2
    return float(np.sqrt(total))


def ddbar_omega(a: FrameAlgebra) -> Form:
    """√−1 ∂∂̄ω."""
    return partial(a, partial_bar(a, kahler_form(a))) * 1j


def ddbar_omega_identity(a: FrameAlgebra, tau: List[Form], big_theta: CurvatureForm) -> float:
    """‖√−1∂∂̄ω − Σ τ_k∧τ̄_k − Σ φ_k∧Θ_{kℓ}∧φ̄_ℓ‖."""
    n = a.n
    rhs = Form.zero(n)
    for k in range(n):
        rhs = rhs + tau[k].wedge(tau[k].conjugate())
        for l in range(n):
            rhs = rhs + Form.phi(n, k).wedge(big_theta[k, l]).wedge(Form.phibar(n, l))
    return (ddbar_omega(a) - rhs).norm()


def phi_wedge_curvature(big_theta: CurvatureForm) -> FormMatrix:
    """Row vector ᵗφ∧Θ, entries Σ_i φ_i∧Θ_{ij}."""
    n = big_theta.n
    row = zero_matrix(n, 1, n)[0]
    out = []
    for j in range(n):
        acc = row[j]
        for i in range(n):
            acc = acc + Form.phi(n, i).wedge(big_theta[i, j])
        out.append(acc)
    return (tuple(out),)
