"""
hermlab.geometry.calculus

Covariant derivatives of constant-component tensors along connections of the Gauduchon
line, the Riemannian derivative of the Lee form, and the quadratic torsion tensors
A, B, C, φ, P, S and ψ together with the identities they satisfy.

Every tensor here has constant components in the unitary coframe, so the directional
derivative of components vanishes and ∇ reduces to the connection terms. Extending to
non-invariant data means adding e_d(T) back to every derivative below.

Tensor arrays follow the index order of their symbols: T^j_{ik} is ``T[j, i, k]``, a
derivative T^j_{ik,d} appends the direction as the last axis (length 2n, barred
directions at n + ℓ).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence

import numpy as np

from ..core.errors import IndexSignatureError, InvariantViolation
from .connections import ConnectionForm, TorsionTensor
from .exterior import Form, FrameAlgebra, partial, partial_bar
from .hermitian import kahler_form, kahler_power, tensor_norms


class Slot(str, Enum):
    """Index type of one tensor axis."""

    LOWER = "lower"
    LOWER_BAR = "lower_bar"
    UPPER = "upper"
    UPPER_BAR = "upper_bar"
    DIRECTION = "direction"


def _act(gamma: np.ndarray, tensor: np.ndarray, axis: int) -> np.ndarray:
    # out[..., p (at axis), ..., d] = Σ_r gamma[p, r, d] tensor[..., r (at axis), ...]
    out = np.tensordot(gamma, tensor, axes=([1], [axis]))
    out = np.moveaxis(out, 1, -1)
    return np.moveaxis(out, 0, axis)


def covariant_derivative(
    tensor: np.ndarray, slots: Sequence[Slot], connection: ConnectionForm
) -> np.ndarray:
    """
    Covariant derivative of a constant-component tensor in every frame direction.

    With ∇e_i = Σ_j θ_{ij} e_j, a lower index p picks up −Σ_r θ_{pr} T_{..r..}, an
    upper index +Σ_r θ_{rp} T^{..r..}; barred indices use conj(θ). A DIRECTION slot
    (length 2n) transforms as a lower index of the full complexified frame.
    :param tensor: Component array, one axis per slot.
    :param slots: Index type of every axis.
    :param connection: Chern, Gauduchon or Strominger connection.
    :return: Array with a trailing direction axis of length 2n.
    :raises IndexSignatureError: If the signature does not match the tensor or the
        connection is not on the Gauduchon line.
    """
    tensor = np.asarray(tensor, dtype=complex)
    slots = tuple(slots)
    n = connection.n
    if not connection.kind.hermitian:
        raise IndexSignatureError(
            f"Covariant derivatives need a Gauduchon-line connection, got {connection.kind.value}"
        )
    if len(slots) != tensor.ndim:
        raise IndexSignatureError(
            f"Index signature has {len(slots)} slots but the tensor has {tensor.ndim} axes"
        )
    c = connection.coefficients()
    c_bar = connection.conjugate_coefficients()
    out = np.zeros(tensor.shape + (2 * n,), dtype=complex)
    for axis, slot in enumerate(slots):
        if not isinstance(slot, Slot):
            raise IndexSignatureError(f"Untyped index at axis {axis}: {slot!r}")
        expected = 2 * n if slot is Slot.DIRECTION else n
        if tensor.shape[axis] != expected:
            raise IndexSignatureError(
                f"Axis {axis} ({slot.value}) has length {tensor.shape[axis]}, expected {expected}"
            )
        if slot is Slot.LOWER:
            out -= _act(c, tensor, axis)
        elif slot is Slot.LOWER_BAR:
            out -= _act(c_bar, tensor, axis)
        elif slot is Slot.UPPER:
            out += _act(c.transpose(1, 0, 2), tensor, axis)
        elif slot is Slot.UPPER_BAR:
            out += _act(c_bar.transpose(1, 0, 2), tensor, axis)
        else:
            block = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
            block[:n, :n] = c
            block[n:, n:] = c_bar
            out -= _act(block, tensor, axis)
    return out


def second_covariant_derivative(
    tensor: np.ndarray, slots: Sequence[Slot], connection: ConnectionForm
) -> np.ndarray:
    """
    ∇∇T with axes (..., first direction, second direction).

    ``out[..., a, b]`` is T_{..., a b}: differentiate along dir_a, then along dir_b.
    """
    first = covariant_derivative(tensor, slots, connection)
    return covariant_derivative(first, tuple(slots) + (Slot.DIRECTION,), connection)


def torsion_derivative(torsion: TorsionTensor, connection: ConnectionForm) -> np.ndarray:
    """T^j_{ik,d} as ``D[j, i, k, d]``."""
    return covariant_derivative(
        torsion.components, (Slot.UPPER, Slot.LOWER, Slot.LOWER), connection
    )


def eta_derivative(torsion: TorsionTensor, connection: ConnectionForm) -> np.ndarray:
    """η_{i,d} as ``D[i, d]``."""
    return covariant_derivative(torsion.eta, (Slot.LOWER,), connection)


def lc_derivative_lee_form(
    torsion: TorsionTensor, block1: ConnectionForm, block2: ConnectionForm
) -> np.ndarray:
    """
    Riemannian covariant derivative of the real 1-form η + η̄.

    Uses ∇φ_i = −Σ_k (θ₁)_{ki} φ_k − Σ_k (θ₂)_{ki} φ̄_k and its conjugate.
    :return: ``D[a, c]``, the component of ∇_{dir_a}(η + η̄) on dir_c.
    """
    n = torsion.n
    eta = torsion.eta
    c1, c2 = block1.coefficients(), block2.coefficients()
    c1_bar, c2_bar = block1.conjugate_coefficients(), block2.conjugate_coefficients()
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:, :n] = -(
        np.einsum("i,kia->ak", eta, c1) + np.einsum("i,kia->ak", eta.conj(), c2_bar)
    )
    out[:, n:] = -(
        np.einsum("i,kia->ak", eta, c2) + np.einsum("i,kia->ak", eta.conj(), c1_bar)
    )
    return out


def lee_form_criterion_residuals(torsion: TorsionTensor, deta: np.ndarray) -> Dict[str, float]:
    """
    Component equations whose joint vanishing is equivalent to η + η̄ being
    Riemannian-parallel, with η_{i,d} taken along the Strominger connection:
    η_{i,k} = −Σ_r η_r T^r_{ik} and η_{i,k̄} = Σ_r conj(η_r) T^k_{ir} − η_r conj(T^i_{kr}).
    """
    n = torsion.n
    t, eta = torsion.components, torsion.eta
    holomorphic = deta[:, :n] + np.einsum("r,rik->ik", eta, t)
    mixed = deta[:, n:] - (
        np.einsum("r,kir->ik", eta.conj(), t) - np.einsum("r,ikr->ik", eta, t.conj())
    )
    return {
        "holomorphic": float(np.abs(holomorphic).max(initial=0.0)),
        "mixed": float(np.abs(mixed).max(initial=0.0)),
    }


def p_tensor(t: np.ndarray) -> np.ndarray:
    """P^{jℓ}_{ik} as ``P[j, l, i, k]``, the five-term quadratic torsion expression."""
    tb = t.conj()
    return (
        np.einsum("rik,rjl->jlik", t, tb)
        + np.einsum("jir,klr->jlik", t, tb)
        + np.einsum("lkr,ijr->jlik", t, tb)
        - np.einsum("lir,kjr->jlik", t, tb)
        - np.einsum("jkr,ilr->jlik", t, tb)
    )


def cyclic_torsion_sum(t: np.ndarray) -> np.ndarray:
    """Σ_r (T^r_{ik}T^j_{rℓ} + T^r_{ℓi}T^j_{rk} + T^r_{kℓ}T^j_{ri}) as ``[j, i, k, l]``."""
    return (
        np.einsum("rik,jrl->jikl", t, t)
        + np.einsum("rli,jrk->jikl", t, t)
        + np.einsum("rkl,jri->jikl", t, t)
    )


@dataclass(frozen=True, eq=False)
class DerivedTensors:
    """
    Quadratic torsion tensors.

    A_{kℓ̄} = Σ T^r_{sk} conj(T^r_{sℓ}), B_{kℓ̄} = Σ T^ℓ_{rs} conj(T^k_{rs}),
    C_{ik} = Σ T^r_{si} T^s_{rk}, φ^ℓ_k = Σ_r conj(η_r) T^ℓ_{kr} stored as ``phi[k, l]``,
    S = φ + φ* − B and ψ = φ − ½B. ``b`` holds the eigenvalues of B.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    phi: np.ndarray
    P: np.ndarray
    S: np.ndarray
    psi: np.ndarray
    b: np.ndarray

    def symmetry_residual(self) -> float:
        """Largest deviation from the Hermitian, symmetric and P-tensor symmetries."""
        p = self.P
        residuals = [
            np.abs(self.A - self.A.conj().T).max(initial=0.0),
            np.abs(self.B - self.B.conj().T).max(initial=0.0),
            np.abs(self.C - self.C.T).max(initial=0.0),
            np.abs(p + p.transpose(0, 1, 3, 2)).max(initial=0.0),
            np.abs(p + p.transpose(1, 0, 2, 3)).max(initial=0.0),
            np.abs(p - np.conj(p.transpose(2, 3, 0, 1))).max(initial=0.0),
            np.abs(self.S - np.einsum("ilik->kl", p)).max(initial=0.0),
        ]
        return float(max(residuals))

    def psi_skew_residual(self) -> float:
        """|ψ + ψ*|, zero on Strominger Kähler-like inputs."""
        return float(np.abs(self.psi + self.psi.conj().T).max(initial=0.0))


def derived_tensors(torsion: TorsionTensor) -> DerivedTensors:
    """
    Build A, B, C, φ, P, S, ψ and the eigenvalues of B.
    :raises InvariantViolation: If the constructed tensors break their symmetries.
    """
    t, eta = torsion.components, torsion.eta
    tb = t.conj()
    a = np.einsum("rsk,rsl->kl", t, tb)
    b = np.einsum("lrs,krs->kl", t, tb)
    c = np.einsum("rsi,srk->ik", t, t)
    a = 0.5 * (a + a.conj().T)
    b = 0.5 * (b + b.conj().T)
    c = 0.5 * (c + c.T)
    phi = np.einsum("r,lkr->kl", eta.conj(), t)
    p = p_tensor(t)
    s = phi + phi.conj().T - b
    result = DerivedTensors(
        A=a,
        B=b,
        C=c,
        phi=phi,
        P=p,
        S=s,
        psi=phi - 0.5 * b,
        b=np.linalg.eigvalsh(b),
    )
    scale = 1.0 + float(np.sum(np.abs(t) ** 2))
    if result.symmetry_residual() > 1e-10 * scale:
        raise InvariantViolation(
            f"Derived torsion tensors break their symmetries ({result.symmetry_residual():.3e})"
        )
    return result


def _max(x: np.ndarray) -> float:
    return float(np.abs(x).max(initial=0.0))


def curvature_torsion_residuals(
    torsion: TorsionTensor,
    chern_derivative: np.ndarray,
    chern_components: np.ndarray,
    riemann: np.ndarray,
) -> Dict[str, float]:
    """
    Relations between Chern curvature, Chern derivatives of torsion and the Riemannian
    curvature that hold on every Hermitian manifold (derivatives along ∇ᶜ):

    - chern_torsion_derivative: 2T^j_{ik,ℓ̄} = R^c_{kℓ̄ij̄} − R^c_{iℓ̄kj̄}
    - riemannian_mixed_holomorphic: R_{kℓ̄ij} = T^ℓ_{ij,k} + T^ℓ_{ri}T^r_{jk} − T^ℓ_{rj}T^r_{ik}
    - riemannian_antiholomorphic_pair: R_{j̄ℓ̄ik} in terms of T and its barred derivatives
    - riemannian_hermitian_block: R_{kℓ̄ij̄} against R^c_{kℓ̄ij̄}
    - chern_curvature_hermitian_pairing: R^c_{ij̄kℓ̄} = conj(R^c_{jīℓk̄})
    """
    n = torsion.n
    t = torsion.components
    tb = t.conj()
    dc = chern_derivative
    rc = chern_components
    dbar = dc[..., n:]

    first = 2.0 * dbar - (np.einsum("klij->jikl", rc) - np.einsum("ilkj->jikl", rc))

    lhs22 = riemann[:n, n:, :n, :n]
    rhs22 = (
        np.einsum("lijk->klij", dc[..., :n])
        + np.einsum("lri,rjk->klij", t, t)
        - np.einsum("lrj,rik->klij", t, t)
    )

    lhs23 = riemann[n:, n:, :n, :n]
    rhs23 = (
        np.einsum("likj->jlik", dbar)
        - np.einsum("jikl->jlik", dbar)
        + 2.0 * np.einsum("rik,rjl->jlik", t, tb)
        + np.einsum("jri,krl->jlik", t, tb)
        + np.einsum("lrk,irj->jlik", t, tb)
        - np.einsum("lri,krj->jlik", t, tb)
        - np.einsum("jrk,irl->jlik", t, tb)
    )

    lhs24 = riemann[:n, n:, :n, n:]
    rhs24 = (
        np.einsum("klij->klij", rc)
        - np.einsum("jikl->klij", dbar)
        - np.conj(np.einsum("ijlk->klij", dbar))
        + np.einsum("rik,rjl->klij", t, tb)
        - np.einsum("jrk,irl->klij", t, tb)
        - np.einsum("lri,krj->klij", t, tb)
    )

    pairing = rc - np.conj(rc.transpose(1, 0, 3, 2))
    return {
        "chern_torsion_derivative": _max(first),
        "riemannian_mixed_holomorphic": _max(lhs22 - rhs22),
        "riemannian_antiholomorphic_pair": _max(lhs23 - rhs23),
        "riemannian_hermitian_block": _max(lhs24 - rhs24),
        "chern_curvature_hermitian_pairing": _max(pairing),
    }


def skl_torsion_identities(
    torsion: TorsionTensor, strominger_derivative: np.ndarray, p: np.ndarray
) -> Dict[str, float]:
    """
    Torsion identities that follow from the Strominger connection being Kähler-like
    (derivatives along ∇ˢ). Meaningful only on such inputs.
    """
    n = torsion.n
    t = torsion.components
    ds = strominger_derivative
    hol, dbar = ds[..., :n], ds[..., n:]
    cyc = cyclic_torsion_sum(t)
    p_swapped = np.einsum("jlik->jikl", p)
    conj_swap = np.conj(np.einsum("ijlk->jikl", dbar))
    return {
        "strominger_holomorphic_derivative_vanishes": _max(hol),
        "torsion_cyclic_sum": _max(cyc),
        "torsion_antiholomorphic_derivative": _max(dbar + (2.0 / 3.0) * p_swapped),
        "torsion_derivative_antisymmetrization": max(
            _max(dbar + np.einsum("likj->jikl", dbar)), _max(dbar - conj_swap)
        ),
        "torsion_derivative_combination": max(
            _max(dbar + conj_swap - np.conj(np.einsum("kjli->jikl", dbar)) + 2.0 * p_swapped),
            _max(hol - hol.transpose(0, 1, 3, 2) - 2.0 * cyc),
        ),
    }


def eta_identities(
    torsion: TorsionTensor, deta: np.ndarray, derived: DerivedTensors, a_derivative: np.ndarray
) -> Dict[str, float]:
    """
    Identities for η and the quadratic tensors on Strominger Kähler-like inputs.
    :param deta: η_{i,d} along ∇ˢ.
    :param a_derivative: A_{pk̄,d} along ∇ˢ.
    """
    n = torsion.n
    t, eta = torsion.components, torsion.eta
    t_sq = float(np.sum(np.abs(t) ** 2))
    eta_sq = float(np.sum(np.abs(eta) ** 2))
    mixed = deta[:, n:]
    trace = np.trace(mixed)
    return {
        "eta_holomorphic_derivative": _max(deta[:, :n]),
        "eta_torsion_contraction": _max(np.einsum("r,rik->ik", eta, t)),
        "eta_trace": abs(trace - (2.0 / 3.0) * (t_sq - 2.0 * eta_sq)),
        "eta_mixed_hermitian": _max(mixed - mixed.conj().T),
        "eta_s_tensor": _max(mixed + (2.0 / 3.0) * derived.S),
        "eta_norm_constant": _max(np.einsum("kl,k->l", mixed, eta.conj())),
        "eta_parallel": _max(deta),
        "a_tensor_criterion": abs(np.einsum("pkl,pkl->", t, a_derivative[..., n:])),
    }


def torsion_chain_residuals(torsion: TorsionTensor, derived: DerivedTensors) -> Dict[str, float]:
    """
    Scalar chain linking φ, A and B on Strominger Kähler-like inputs, ending in
    |B|² = 2 Re(φB) = |φ + φ*|², plus the contraction of ∇ˢ of ηᵣT^r_{ik} = 0.
    """
    t = torsion.components
    phi, a, b = derived.phi, derived.A, derived.B
    phi_b = np.trace(phi @ b)
    phi_phi = np.trace(phi @ phi)
    phi_sq = float(np.sum(np.abs(phi) ** 2))
    phi_a = np.trace(phi @ a)
    b_sq = float(np.sum(np.abs(b) ** 2))
    sym_sq = float(np.sum(np.abs(phi + phi.conj().T) ** 2))
    central = (
        np.einsum("rl,rik->lik", phi - b, t)
        + np.einsum("lis,sk->lik", t, phi.conj())
        - np.einsum("lks,si->lik", t, phi.conj())
    )
    return {
        "phi_b_expansion": abs(phi_b - phi_phi - phi_sq),
        "phi_b_a_relation": abs(phi_b - b_sq + 2.0 * np.conj(phi_a)),
        "b_norm_real_part": abs(b_sq - 2.0 * phi_b.real),
        "b_norm_symmetrized": abs(b_sq - sym_sq),
        "central_identity": _max(central),
    }


def commutation_residual(
    torsion: TorsionTensor, deta: np.ndarray, second: np.ndarray
) -> float:
    """
    η_{i,j̄k̄} − η_{i,k̄j̄} − 2 Σ_r conj(T^r_{kj}) η_{i,r̄}, valid whenever (Θˢ)^{0,2} = 0.
    :param second: Second Strominger derivative ``[i, a, b]``.
    """
    n = torsion.n
    bars = second[:, n:, n:]
    rhs = 2.0 * np.einsum("rkj,ir->ijk", torsion.components.conj(), deta[:, n:])
    return _max(bars - bars.transpose(0, 2, 1) - rhs)


def parallel_tensor_residuals(derived: DerivedTensors, connection: ConnectionForm) -> Dict[str, float]:
    """∇ˢφ and ∇ˢB, both zero on Strominger Kähler-like inputs."""
    d_phi = covariant_derivative(derived.phi, (Slot.LOWER, Slot.UPPER), connection)
    d_b = covariant_derivative(derived.B, (Slot.LOWER, Slot.LOWER_BAR), connection)
    return {"phi_parallel": _max(d_phi), "b_parallel": _max(d_b)}


def dbar_eta_expansion(torsion: TorsionTensor, deta: np.ndarray) -> Form:
    """
    ∂̄η = Σ (−η_{a,b̄} + 2 Σ_p η_p conj(T^a_{pb})) φ_a∧φ̄_b, true on every input.
    """
    n = torsion.n
    coef = -deta[:, n:] + 2.0 * np.einsum("p,apb->ab", torsion.eta, torsion.components.conj())
    return Form(n, {(a, n + b): coef[a, b] for a in range(n) for b in range(n)})


def lee_form_decomposition_residuals(
    a: FrameAlgebra, torsion: TorsionTensor, deta: np.ndarray
) -> Dict[str, float]:
    """
    Residuals of two identities holding on every Hermitian input:
    the expansion of ∂̄η through Strominger derivatives, and
    ∂∂̄ω^{n−1} = 2(∂̄η + 2η∧η̄)∧ω^{n−1}.
    """
    n = a.n
    eta = torsion.eta_form()
    dbar_eta = partial_bar(a, eta)
    omega_top = kahler_power(a, n - 1)
    rhs = (dbar_eta + eta.wedge(eta.conjugate()) * 2.0).wedge(omega_top) * 2.0
    return {
        "dbar_eta_expansion": (dbar_eta - dbar_eta_expansion(torsion, deta)).norm(),
        "ddbar_omega_top": (partial(a, partial_bar(a, omega_top)) - rhs).norm(),
    }


def lee_form_type_residuals(
    a: FrameAlgebra, torsion: TorsionTensor, derived: DerivedTensors
) -> Dict[str, float]:
    """
    On Strominger Kähler-like inputs: ∂η = 0, ∂̄η = −2 Σ conj(φ^i_j) φ_i∧φ̄_j and ∂̄η̄ = 0.
    """
    n = a.n
    eta = torsion.eta_form()
    phi = derived.phi
    target = Form(
        n, {(i, n + j): -2.0 * np.conj(phi[j, i]) for i in range(n) for j in range(n)}
    )
    return {
        "partial_eta": partial(a, eta).norm(),
        "dbar_eta": (partial_bar(a, eta) - target).norm(),
        "dbar_eta_bar": partial_bar(a, eta.conjugate()).norm(),
    }


def gauduchon_volume_residuals(
    a: FrameAlgebra, torsion: TorsionTensor, deta: np.ndarray
) -> Dict[str, float]:
    """
    −√−1 ∂∂̄ω^{n−1} against (2/n)(Σ_r η_{r,r̄}) ωⁿ and (4/3n)(|T|² − 2|η|²) ωⁿ.
    The second equality needs the Strominger Kähler-like condition.
    """
    n = a.n
    lhs = partial(a, partial_bar(a, kahler_power(a, n - 1))) * -1j
    top = kahler_power(a, n)
    trace = complex(np.trace(deta[:, n:]))
    t_sq, eta_sq = tensor_norms(torsion)
    return {
        "trace_form": (lhs - top * (2.0 / n * trace)).norm(),
        "norm_form": (lhs - top * (4.0 / (3.0 * n) * (t_sq - 2.0 * eta_sq))).norm(),
    }


def pluriclosed_p_residual(a: FrameAlgebra, p: np.ndarray) -> float:
    """‖√−1∂∂̄ω + ⅓ Σ P^{jℓ}_{ik} φ_i∧φ_k∧φ̄_j∧φ̄_ℓ‖."""
    n = a.n
    total = Form.zero(n)
    for j, l, i, k in zip(*np.nonzero(np.abs(p) > 0.0)):
        term = Form.phi(n, i).wedge(Form.phi(n, k)).wedge(Form.phibar(n, j)).wedge(Form.phibar(n, l))
        total = total + term * p[j, l, i, k]
    lhs = partial(a, partial_bar(a, kahler_form(a))) * 1j
    return (lhs + total * (1.0 / 3.0)).norm()


def torsion_form_wedge(a: FrameAlgebra) -> Form:
    """∂ω∧∂̄ω∧ω^{n−3}, defined for n ≥ 3."""
    if a.n < 3:
        raise ValueError("∂ω∧∂̄ω∧ω^{n−3} needs n ≥ 3")
    omega = kahler_form(a)
    return partial(a, omega).wedge(partial_bar(a, omega)).wedge(kahler_power(a, a.n - 3))
