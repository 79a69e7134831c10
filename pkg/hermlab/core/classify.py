"""
hermlab.core.classify

Classification predicates and the registered identity checks that make up the
verification report.

Every predicate carries the residual that decided it. A residual of polynomial order k
in the structure constants passes iff r ≤ tol·(1 + σᵏ) with σ the largest unitary
structure constant.
"""

from functools import lru_cache
from typing import Dict, Iterable, Optional

import numpy as np

from ..geometry.calculus import (
    Slot,
    commutation_residual,
    covariant_derivative,
    curvature_torsion_residuals,
    eta_identities,
    gauduchon_volume_residuals,
    lee_form_criterion_residuals,
    lee_form_decomposition_residuals,
    lee_form_type_residuals,
    parallel_tensor_residuals,
    pluriclosed_p_residual,
    second_covariant_derivative,
    skl_torsion_identities,
    torsion_chain_residuals,
    torsion_form_wedge,
)
from ..geometry.connections import (
    balanced_identity_check,
    chern_structure_residual,
    connection_torsion,
    gamma_torsion_residual,
    gauduchon_torsion,
    riemannian_structure_residual,
    torsion_skew_residual,
    trace_gamma_prime,
)
from ..geometry.curvature import (
    curvature_type_leakage,
    ddbar_omega,
    ddbar_omega_identity,
    first_bianchi_residual,
    gray_residual,
    phi_wedge_curvature,
    pure_type_riemannian_residual,
    second_bianchi_residual,
)
from ..geometry.exterior import (
    Form,
    matrix_add,
    matrix_norm,
    matrix_scale,
    matrix_sub,
    partial,
    partial_bar,
    transform,
)
from ..geometry.hermitian import change_coframe, kahler_form, kahler_power, rotate, tensor_norms
from ..geometry.structure import HermitianStructure
from .config import HarnessConfig
from .harness import CheckContext, Harness, Outcome
from .logging import get_logger
from .types import CheckStatus, InputInfo, PredicateResult, Report

logger = get_logger(__name__)

COFRAME_CHANGE_SEED = 2024
LEE_FORM_AFFINE_T = 0.7


def _graded(value_residual: float, order: int, s: HermitianStructure, config: HarnessConfig) -> PredicateResult:
    scale = s.scale**order
    return PredicateResult(
        value=value_residual <= config.threshold(scale), residual=float(value_residual), scale=scale
    )


def kahler_residual(s: HermitianStructure) -> float:
    """‖dω‖."""
    return s.algebra.d(kahler_form(s.algebra)).norm()


def balanced_residual(s: HermitianStructure) -> float:
    """‖η‖."""
    return float(np.linalg.norm(s.torsion.eta))


def gauduchon_residual(s: HermitianStructure) -> float:
    """‖∂∂̄ω^{n−1}‖."""
    a = s.algebra
    return partial(a, partial_bar(a, kahler_power(a, a.n - 1))).norm()


def pluriclosed_residual(s: HermitianStructure) -> float:
    """‖∂∂̄ω‖."""
    return ddbar_omega(s.algebra).norm()


def skl_residuals(s: HermitianStructure) -> Dict[str, float]:
    """
    The wedge form ‖ᵗφ∧Θˢ‖ and the component form
    ‖(Θˢ)^{2,0}‖ + ‖(Θˢ)^{0,2}‖ + max|Rˢ_{ij̄kℓ̄} − Rˢ_{kj̄iℓ̄}|.
    """
    big = s.strominger_curvature
    rs = s.strominger_components
    return {
        "wedge": matrix_norm(phi_wedge_curvature(big)),
        "components": matrix_norm(big.type_part(2, 0))
        + matrix_norm(big.type_part(0, 2))
        + float(np.abs(rs - rs.transpose(2, 1, 0, 3)).max(initial=0.0)),
    }


def torsion_parallel_residual(s: HermitianStructure) -> float:
    """max |∇ˢT|."""
    return float(np.abs(s.strominger_torsion_derivative).max(initial=0.0))


def evaluate_predicates(s: HermitianStructure, config: HarnessConfig) -> Dict[str, PredicateResult]:
    """
    Compute every classification predicate.
    :return: Mapping from predicate name to its graded result.
    """
    predicates = {
        "kahler": _graded(kahler_residual(s), 1, s, config),
        "balanced": _graded(balanced_residual(s), 1, s, config),
        "gauduchon": _graded(gauduchon_residual(s), 2, s, config),
        "pluriclosed": _graded(pluriclosed_residual(s), 2, s, config),
    }
    omega_top = s.algebra.d(kahler_power(s.algebra, s.n - 1)).norm()
    if (omega_top <= config.threshold(s.scale)) != predicates["balanced"].value:
        logger.warning("Balanced verdicts from η and from dω^{n−1} disagree on %s", s.name or "input")
    skl = skl_residuals(s)
    predicates["skl"] = _graded(max(skl.values()), 2, s, config)
    predicates["chern_flat"] = _graded(s.chern_curvature.norm(), 2, s, config)
    predicates["strominger_flat"] = _graded(s.strominger_curvature.norm(), 2, s, config)
    predicates["torsion_parallel"] = _graded(torsion_parallel_residual(s), 2, s, config)
    predicates["vaisman"] = _vaisman(s, config, predicates["kahler"])
    predicates["strongly_gauduchon"] = PredicateResult(
        value=None, status=CheckStatus.NOT_IMPLEMENTED
    )
    return predicates


def _vaisman(s: HermitianStructure, config: HarnessConfig, kahler: PredicateResult) -> PredicateResult:
    # Lee form is η + η̄ only for surfaces
    if s.n != 2:
        return PredicateResult(value=None, status=CheckStatus.VACUOUS)
    if balanced_residual(s) <= config.threshold(s.scale):
        return kahler
    return _graded(float(np.abs(s.lee_form_derivative).max(initial=0.0)), 2, s, config)


def report_scalars(s: HermitianStructure) -> Dict[str, float]:
    t_sq, eta_sq = tensor_norms(s.torsion)
    scalars = {
        "structure_scale": s.scale,
        "torsion_norm_sq": t_sq,
        "eta_norm_sq": eta_sq,
        "torsion_balance": t_sq - 2.0 * eta_sq,
        "chern_torsion_norm_sq": float(np.sum(np.abs(gauduchon_torsion(s.torsion, 0.0)) ** 2)),
        "bismut_torsion_norm_sq": float(np.sum(np.abs(gauduchon_torsion(s.torsion, 2.0)) ** 2)),
        "skl_residual": max(skl_residuals(s).values()),
    }
    for i, b in enumerate(s.derived.b, start=1):
        scalars[f"b_eigenvalue_{i}"] = float(b)
    return scalars


def _max(values: Iterable[float]) -> float:
    return float(max(values, default=0.0))


def _agreement(*verdicts: bool) -> CheckStatus:
    return CheckStatus.PASS if len(set(verdicts)) <= 1 else CheckStatus.FAIL


harness = Harness("hermlab")
check = harness.check


# structure


@check("structure")
def d_squared_zero(ctx: CheckContext) -> Outcome:
    """d² = 0 on every coframe generator."""
    a = ctx.structure.algebra
    return Outcome(_max(a.d(a.differential(k)).norm() for k in range(2 * a.n)), order=2)


@check("structure")
def chern_structure_equation(ctx: CheckContext) -> Outcome:
    """dφ + ᵗθ∧φ = τ for the Chern connection."""
    s = ctx.structure
    return Outcome(chern_structure_residual(s.algebra, s.chern, s.tau), order=1)


@check("structure")
def chern_torsion_type(ctx: CheckContext) -> Outcome:
    """Chern torsion τ is of type (2,0)."""
    return Outcome(_max((t - t.type_part(2, 0)).norm() for t in ctx.structure.tau), order=1)


@check("structure")
def riemannian_structure_equation(ctx: CheckContext) -> Outcome:
    """dφ + ᵗθ₁∧φ + ᵗθ₂∧φ̄ = 0."""
    s = ctx.structure
    return Outcome(riemannian_structure_residual(s.algebra, *s.riemannian), order=1)


@check("structure")
def connection_skew_symmetry(ctx: CheckContext) -> Outcome:
    """θ, θˢ, θᵗ and θ₁ are skew-Hermitian and θ₂ is skew-symmetric."""
    s = ctx.structure
    forms = [s.chern, s.strominger, s.gauduchon(LEE_FORM_AFFINE_T), *s.riemannian]
    return Outcome(_max(f.skew_residual() for f in forms), order=1)


@check("structure")
def gauduchon_line_affine(ctx: CheckContext) -> Outcome:
    """θᵗ interpolates θ and θˢ affinely and its torsion matches the closed formula."""
    s = ctx.structure
    t = LEE_FORM_AFFINE_T
    expected = matrix_add(
        matrix_scale(1.0 - t / 2.0, s.chern.entries), matrix_scale(t / 2.0, s.strominger.entries)
    )
    residual = matrix_norm(matrix_sub(s.gauduchon(t).entries, expected))
    for value in (0.0, 1.0, t):
        read_off = connection_torsion(s.algebra, s.gauduchon(value))
        residual = max(
            residual, float(np.abs(read_off - gauduchon_torsion(s.torsion, value)).max(initial=0.0))
        )
    return Outcome(residual, order=1)


@check("structure")
def torsion_trace_recovers_eta(ctx: CheckContext) -> Outcome:
    """tr γ′ = η."""
    s = ctx.structure
    return Outcome((trace_gamma_prime(s.gamma) - s.torsion.eta_form()).norm(), order=1)


@check("structure")
def gamma_torsion_relation(ctx: CheckContext) -> Outcome:
    """ᵗγ′∧φ = −τ."""
    s = ctx.structure
    return Outcome(gamma_torsion_residual(s.gamma, s.tau), order=1)


@check("structure")
def chern_curvature_type(ctx: CheckContext) -> Outcome:
    """Chern curvature is of type (1,1)."""
    return Outcome(curvature_type_leakage(ctx.structure.chern_curvature), order=2)


@check("structure")
def chern_second_bianchi(ctx: CheckContext) -> Outcome:
    """dΘ = θ∧Θ − Θ∧θ for the Chern connection."""
    s = ctx.structure
    return Outcome(second_bianchi_residual(s.algebra, s.chern, s.chern_curvature), order=3)


@check("structure")
def strominger_second_bianchi(ctx: CheckContext) -> Outcome:
    """dΘˢ = θˢ∧Θˢ − Θˢ∧θˢ."""
    s = ctx.structure
    return Outcome(
        second_bianchi_residual(s.algebra, s.strominger, s.strominger_curvature), order=3
    )


@check("structure")
def chern_first_bianchi(ctx: CheckContext) -> Outcome:
    """dτ + ᵗθ∧τ = ᵗΘ∧φ."""
    s = ctx.structure
    return Outcome(first_bianchi_residual(s.algebra, s.chern, s.tau, s.chern_curvature), order=2)


@check("structure")
def strominger_torsion_formula(ctx: CheckContext) -> Outcome:
    """Torsion read off the Strominger structure equation matches the closed formula."""
    s = ctx.structure
    read_off = connection_torsion(s.algebra, s.strominger)
    return Outcome(
        float(np.abs(read_off - gauduchon_torsion(s.torsion, 2.0)).max(initial=0.0)), order=1
    )


@check("structure")
def strominger_torsion_skew(ctx: CheckContext) -> Outcome:
    """Strominger torsion is totally skew-symmetric."""
    return Outcome(torsion_skew_residual(gauduchon_torsion(ctx.structure.torsion, 2.0)), order=1)


@check("structure")
def balanced_trace_identity(ctx: CheckContext) -> Outcome:
    """∂ω^{n−1} = −2η∧ω^{n−1}."""
    s = ctx.structure
    return Outcome(balanced_identity_check(s.algebra, s.torsion), order=1)


@check("structure")
def ddbar_omega_decomposition(ctx: CheckContext) -> Outcome:
    """√−1∂∂̄ω = Σ τ_k∧τ̄_k + Σ φ_k∧Θ_{kℓ}∧φ̄_ℓ."""
    s = ctx.structure
    return Outcome(ddbar_omega_identity(s.algebra, s.tau, s.chern_curvature), order=2)


@check("structure")
def lee_form_dbar_decomposition(ctx: CheckContext) -> Outcome:
    """∂̄η through Strominger derivatives, and ∂∂̄ω^{n−1} = 2(∂̄η + 2η∧η̄)∧ω^{n−1}."""
    s = ctx.structure
    residuals = lee_form_decomposition_residuals(s.algebra, s.torsion, s.eta_derivative)
    return Outcome(_max(residuals.values()), order=2)


@check("structure")
def riemannian_gray_identity(ctx: CheckContext) -> Outcome:
    """(Θ₂)^{0,2} = 0."""
    return Outcome(gray_residual(ctx.structure.riemannian_curvature[1]), order=2)


@check("structure")
def riemannian_pure_type_vanishing(ctx: CheckContext) -> Outcome:
    """R_{ijkℓ} = R_{īj̄k̄ℓ̄} = 0."""
    return Outcome(pure_type_riemannian_residual(ctx.structure.riemann_components), order=2)


@check("structure")
def derived_tensor_symmetries(ctx: CheckContext) -> Outcome:
    """A, B Hermitian, C symmetric, P skew in both pairs and S = Σ_i P^{iℓ}_{ik}."""
    return Outcome(ctx.structure.derived.symmetry_residual(), order=2)


@lru_cache(maxsize=8)
def _test_matrices(n: int):
    rng = np.random.default_rng(COFRAME_CHANGE_SEED + n)
    general = np.eye(n) + 0.3 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    unitary = q * (np.diag(r) / np.abs(np.diag(r)))
    return general, unitary


@check("structure")
def coframe_change_consistency(ctx: CheckContext) -> Outcome:
    """Coframe changes commute with d, and invariants survive a unitary rotation."""
    s = ctx.structure
    a = s.algebra
    n = a.n
    general, unitary = _test_matrices(n)
    changed = change_coframe(a, general)
    inverse = np.linalg.inv(general)
    residual = 0.0
    for k in range(n):
        expected = Form.zero(n)
        for j in range(n):
            expected = expected + transform(a.differential(j), inverse) * general[k, j]
        residual = max(residual, (changed.differential(k) - expected).norm())
    rotated = HermitianStructure(rotate(a, unitary))
    t_sq, eta_sq = tensor_norms(s.torsion)
    r_sq, r_eta = tensor_norms(rotated.torsion)
    residual = max(
        residual,
        abs(t_sq - r_sq),
        abs(eta_sq - r_eta),
        abs(s.chern_curvature.norm() - rotated.chern_curvature.norm()),
        abs(s.strominger_curvature.norm() - rotated.strominger_curvature.norm()),
    )
    return Outcome(residual, order=2)


# curvature


def _curvature_relation(key: str):
    def run(ctx: CheckContext) -> Outcome:
        s = ctx.structure
        residuals = _curvature_residuals(s)
        return Outcome(residuals[key], order=2)

    run.__doc__ = {
        "chern_torsion_derivative": "2T^j_{ik,ℓ̄} = R^c_{kℓ̄ij̄} − R^c_{iℓ̄kj̄} along ∇ᶜ.",
        "riemannian_mixed_holomorphic": "R_{kℓ̄ij} through Chern derivatives of T.",
        "riemannian_antiholomorphic_pair": "R_{j̄ℓ̄ik} through Chern derivatives of T.",
        "riemannian_hermitian_block": "R_{kℓ̄ij̄} against R^c_{kℓ̄ij̄}.",
        "chern_curvature_hermitian_pairing": "R^c_{ij̄kℓ̄} = conj(R^c_{jīℓk̄}).",
    }[key]
    return run


def _curvature_residuals(s: HermitianStructure) -> Dict[str, float]:
    return curvature_torsion_residuals(
        s.torsion, s.chern_torsion_derivative, s.chern_components, s.riemann_components
    )


for _key in (
    "chern_torsion_derivative",
    "riemannian_mixed_holomorphic",
    "riemannian_antiholomorphic_pair",
    "riemannian_hermitian_block",
    "chern_curvature_hermitian_pairing",
):
    harness.register(_curvature_relation(_key), name=_key, suite="curvature")


# skl: identities that need the Strominger Kähler-like condition


def _skl_only(ctx: CheckContext, residual_fn, order: int) -> Outcome:
    if not ctx.holds("skl"):
        return Outcome(applicable=False, order=order)
    return Outcome(residual_fn(ctx.structure), order=order)


def _torsion_identity(key: str):
    def run(ctx: CheckContext) -> Outcome:
        return _skl_only(
            ctx,
            lambda s: skl_torsion_identities(
                s.torsion, s.strominger_torsion_derivative, s.derived.P
            )[key],
            2,
        )

    run.__doc__ = {
        "strominger_holomorphic_derivative_vanishes": "T^j_{ik,ℓ} = 0 along ∇ˢ.",
        "torsion_cyclic_sum": "Cyclic quadratic torsion sum vanishes.",
        "torsion_antiholomorphic_derivative": "T^j_{ik,ℓ̄} = −⅔ P^{jℓ}_{ik}.",
        "torsion_derivative_antisymmetrization": "T^j_{ik,ℓ̄} = −T^ℓ_{ik,j̄} = conj(T^i_{jℓ,k̄}).",
        "torsion_derivative_combination": "Combined first-Bianchi relations between derivatives and P.",
    }[key]
    return run


for _key in (
    "strominger_holomorphic_derivative_vanishes",
    "torsion_cyclic_sum",
    "torsion_antiholomorphic_derivative",
    "torsion_derivative_combination",
    "torsion_derivative_antisymmetrization",
):
    harness.register(_torsion_identity(_key), name=_key, suite="skl")


def _eta_identities(s: HermitianStructure) -> Dict[str, float]:
    da = covariant_derivative(s.derived.A, (Slot.LOWER, Slot.LOWER_BAR), s.strominger)
    return eta_identities(s.torsion, s.eta_derivative, s.derived, da)


@check("skl")
def eta_derivative_identities(ctx: CheckContext) -> Outcome:
    """η_{i,k} = 0, ηᵣT^r_{ik} = 0, Σ η_{r,r̄} = ⅔(|T|²−2|η|²) and η_{k,ℓ̄} = −⅔S_{kℓ̄}."""
    keys = (
        "eta_holomorphic_derivative",
        "eta_torsion_contraction",
        "eta_trace",
        "eta_mixed_hermitian",
        "eta_s_tensor",
    )
    return _skl_only(ctx, lambda s: _max(_eta_identities(s)[k] for k in keys), 2)


@check("skl")
def eta_norm_constant(ctx: CheckContext) -> Outcome:
    """Σ_k η_{k,ℓ̄} conj(η_k) = 0."""
    return _skl_only(ctx, lambda s: _eta_identities(s)["eta_norm_constant"], 3)


@check("skl")
def eta_parallel(ctx: CheckContext) -> Outcome:
    """∇ˢη = 0."""
    return _skl_only(ctx, lambda s: _eta_identities(s)["eta_parallel"], 2)


@check("skl")
def phi_b_parallel(ctx: CheckContext) -> Outcome:
    """∇ˢφ = 0 and ∇ˢB = 0."""
    return _skl_only(
        ctx, lambda s: _max(parallel_tensor_residuals(s.derived, s.strominger).values()), 3
    )


@check("skl")
def a_tensor_criterion(ctx: CheckContext) -> Outcome:
    """Σ T^p_{kℓ} A_{pk̄,ℓ̄} = 0."""
    return _skl_only(ctx, lambda s: _eta_identities(s)["a_tensor_criterion"], 4)


@check("skl")
def torsion_quadratic_chain(ctx: CheckContext) -> Outcome:
    """φB = φ·φ + |φ|², φB − |B|² + 2conj(φA) = 0, |B|² = 2Re φB = |φ+φ*|², central identity."""
    return _skl_only(ctx, lambda s: _max(torsion_chain_residuals(s.torsion, s.derived).values()), 4)


@check("skl")
def eta_type_identities(ctx: CheckContext) -> Outcome:
    """∂η = 0, ∂̄η = −2Σ conj(φ^i_j) φ_i∧φ̄_j and ∂̄η̄ = 0."""
    return _skl_only(
        ctx, lambda s: _max(lee_form_type_residuals(s.algebra, s.torsion, s.derived).values()), 2
    )


@check("skl")
def eta_commutation(ctx: CheckContext) -> Outcome:
    """η_{i,j̄k̄} − η_{i,k̄j̄} = 2 Σ_r conj(T^r_{kj}) η_{i,r̄}."""

    def residual(s: HermitianStructure) -> float:
        second = second_covariant_derivative(s.torsion.eta, (Slot.LOWER,), s.strominger)
        return commutation_residual(s.torsion, s.eta_derivative, second)

    return _skl_only(ctx, residual, 3)


@check("skl")
def gauduchon_volume_identity(ctx: CheckContext) -> Outcome:
    """−√−1∂∂̄ω^{n−1} = (2/n)(Σ η_{r,r̄}) ωⁿ = (4/3n)(|T|²−2|η|²) ωⁿ."""
    return _skl_only(
        ctx,
        lambda s: _max(gauduchon_volume_residuals(s.algebra, s.torsion, s.eta_derivative).values()),
        2,
    )


@check("skl")
def pluriclosed_p_identity(ctx: CheckContext) -> Outcome:
    """√−1∂∂̄ω = −⅓ Σ P^{jℓ}_{ik} φ_i∧φ_k∧φ̄_j∧φ̄_ℓ."""
    return _skl_only(ctx, lambda s: pluriclosed_p_residual(s.algebra, s.derived.P), 2)


@check("skl")
def psi_skew_hermitian(ctx: CheckContext) -> Outcome:
    """ψ = φ − ½B is skew-Hermitian."""
    return _skl_only(ctx, lambda s: s.derived.psi_skew_residual(), 2)


def _implication(hypotheses, conclusion: str, order: int):
    def run(ctx: CheckContext) -> Outcome:
        if not all(ctx.holds(h) for h in hypotheses):
            return Outcome(applicable=False, order=order)
        return Outcome(ctx.predicates[conclusion].residual, order=order)

    run.__doc__ = f"{' and '.join(hypotheses)} implies {conclusion}."
    return run


harness.register(_implication(("skl",), "pluriclosed", 2), "skl_implies_pluriclosed", "skl")
harness.register(_implication(("skl",), "torsion_parallel", 2), "skl_implies_torsion_parallel", "skl")


@check("skl")
def skl_pluriclosed_iff_parallel(ctx: CheckContext) -> Outcome:
    """Under SKL, pluriclosed holds iff ∇ˢT = 0."""
    if not ctx.holds("skl"):
        return Outcome(applicable=False)
    p = ctx.predicates
    return Outcome(
        p["pluriclosed"].residual,
        status=_agreement(p["pluriclosed"].value, p["torsion_parallel"].value),
    )


harness.register(_implication(("skl",), "gauduchon", 2), "skl_implies_gauduchon", "skl")
harness.register(
    _implication(("skl", "balanced"), "kahler", 1), "skl_balanced_implies_kahler", "skl"
)


@check("skl")
def skl_torsion_form_wedge(ctx: CheckContext) -> Outcome:
    """∂ω∧∂̄ω∧ω^{n−3} = 0 for n ≥ 3."""
    if ctx.structure.n < 3:
        return Outcome(applicable=False)
    return _skl_only(ctx, lambda s: torsion_form_wedge(s.algebra).norm(), 2)


@check("skl")
def skl_iff_pluriclosed_and_parallel(ctx: CheckContext) -> Outcome:
    """SKL holds iff the metric is pluriclosed and ∇ˢT = 0."""
    p = ctx.predicates
    return Outcome(
        p["skl"].residual,
        status=_agreement(p["skl"].value, bool(p["pluriclosed"].value and p["torsion_parallel"].value)),
    )


@check("skl")
def skl_residual_forms_agree(ctx: CheckContext) -> Outcome:
    """The wedge and component forms of the SKL residual give the same verdict."""
    s = ctx.structure
    residuals = skl_residuals(s)
    threshold = ctx.config.threshold(s.scale**2)
    return Outcome(
        abs(residuals["wedge"] - residuals["components"]),
        status=_agreement(*(r <= threshold for r in residuals.values())),
    )


# surface


@check("surface")
def surface_torsion_norm_balance(ctx: CheckContext) -> Outcome:
    """On surfaces |T|² = 2|η|² and P^{12}_{12} = |T|² − 2|η|²."""
    s = ctx.structure
    if s.n != 2:
        return Outcome(applicable=False)
    t_sq, eta_sq = tensor_norms(s.torsion)
    balance = t_sq - 2.0 * eta_sq
    return Outcome(max(abs(balance), abs(s.derived.P[0, 1, 0, 1] - balance)), order=2)


@check("surface")
def surface_skl_equivalences(ctx: CheckContext) -> Outcome:
    """On surfaces SKL, ∇ˢT = 0 and Vaisman are equivalent."""
    s = ctx.structure
    if s.n != 2:
        return Outcome(applicable=False)
    p = ctx.predicates
    return Outcome(
        p["skl"].residual,
        status=_agreement(p["skl"].value, p["torsion_parallel"].value, p["vaisman"].value),
    )


@check("surface")
def lee_form_parallel_criterion(ctx: CheckContext) -> Outcome:
    """η + η̄ is Riemannian-parallel iff its component criterion holds; on surfaces iff ∇ˢT = 0."""
    s = ctx.structure
    threshold = ctx.config.threshold(s.scale**2)
    criterion = _max(lee_form_criterion_residuals(s.torsion, s.eta_derivative).values())
    derivative = float(np.abs(s.lee_form_derivative).max(initial=0.0))
    verdicts = [criterion <= threshold, derivative <= threshold]
    if s.n == 2:
        verdicts.append(bool(ctx.predicates["torsion_parallel"].value))
    return Outcome(criterion, status=_agreement(*verdicts))


def build_harness(config: Optional[HarnessConfig] = None) -> Harness:
    """Copy of the module harness bound to ``config``."""
    return harness.copy(config or HarnessConfig())


def theorem_suite(
    s: HermitianStructure,
    config: Optional[HarnessConfig] = None,
    suites: Iterable[str] = ("all",),
    runner: Optional[Harness] = None,
) -> Report:
    """
    Evaluate predicates and the selected checks into a Report.
    :param s: Pipeline of a validated unitary input.
    :param config: Tolerance and worker settings.
    :param suites: Suite names, or ``("all",)``.
    :param runner: Harness to use; a fresh copy bound to ``config`` when omitted.
    :raises CheckExecutionError: If a check raises.
    """
    config = config or HarnessConfig()
    runner = runner or build_harness(config)
    if config.workers > 1:
        s.warm_up()
    predicates = evaluate_predicates(s, config)
    context = CheckContext(structure=s, config=config, predicates=predicates)
    identities = runner.run(context, suites)
    report = Report(
        input=InputInfo(name=s.name, dim=s.n, seed=s.seed if s.seed is not None else config.seed),
        tolerance=config.tol,
        predicates=predicates,
        identities=identities,
        scalars=report_scalars(s),
    )
    logger.info(
        "%s: %d checks, %d failing", s.name or "input", len(identities), len(report.failures())
    )
    return report
