"""
tests.test_geometry_calculus
Covariant derivatives, quadratic torsion tensors and their identities.
"""

import numpy as np
import pytest

from hermlab.core.errors import IndexSignatureError
from hermlab.geometry.calculus import (
    Slot,
    covariant_derivative,
    curvature_torsion_residuals,
    derived_tensors,
    lee_form_criterion_residuals,
    lee_form_decomposition_residuals,
    lee_form_type_residuals,
    parallel_tensor_residuals,
    second_covariant_derivative,
    skl_torsion_identities,
    torsion_chain_residuals,
    torsion_form_wedge,
)


def test_signature_errors(kodaira):
    eye = np.eye(2)
    with pytest.raises(IndexSignatureError):
        covariant_derivative(eye, (Slot.LOWER, Slot.UPPER), kodaira.riemannian[0])
    with pytest.raises(IndexSignatureError):
        covariant_derivative(eye, (Slot.LOWER,), kodaira.chern)
    with pytest.raises(IndexSignatureError):
        covariant_derivative(eye, (Slot.LOWER, "upper"), kodaira.chern)
    with pytest.raises(IndexSignatureError):
        covariant_derivative(np.eye(3), (Slot.LOWER, Slot.UPPER), kodaira.chern)


@pytest.mark.parametrize("t", [0.0, 1.0, 2.0])
def test_identity_and_metric_are_parallel(random_input, t):
    s = random_input(3, 2, 3)
    connection = s.gauduchon(t)
    eye = np.eye(3)
    tol = 1e-12 * (1.0 + s.scale)
    assert np.abs(covariant_derivative(eye, (Slot.LOWER, Slot.UPPER), connection)).max() <= tol
    assert np.abs(covariant_derivative(eye, (Slot.LOWER, Slot.LOWER_BAR), connection)).max() <= tol


def test_derivative_shapes(kodaira):
    first = kodaira.strominger_torsion_derivative
    assert first.shape == (2, 2, 2, 4)
    second = second_covariant_derivative(kodaira.torsion.eta, (Slot.LOWER,), kodaira.strominger)
    assert second.shape == (2, 4, 4)


def test_iwasawa_torsion_is_chern_parallel(iwasawa):
    assert np.abs(iwasawa.chern_torsion_derivative).max() == 0.0
    assert np.abs(iwasawa.strominger_torsion_derivative).max() > 1e-3


def test_kodaira_derived_tensors(kodaira):
    d = kodaira.derived
    assert d.phi[0, 0] == pytest.approx(0.25)
    assert d.B[0, 0] == pytest.approx(0.5)
    assert np.allclose(d.S, 0.0)
    assert d.psi_skew_residual() == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(sorted(d.b), [0.0, 0.5])


def test_iwasawa_p_tensor(iwasawa):
    p = iwasawa.derived.P
    assert p[0, 1, 0, 1] == pytest.approx(0.25)
    assert p[1, 0, 0, 1] == pytest.approx(-0.25)


@pytest.mark.parametrize("seed", range(1, 8))
def test_derived_tensor_symmetries(random_input, seed):
    s = random_input(4, 2, seed)
    d = derived_tensors(s.torsion)
    assert d.symmetry_residual() <= 1e-10 * (1.0 + s.torsion.squared_norm())


@pytest.mark.parametrize("n,m,seed", [(2, 1, 1), (3, 2, 7), (3, 1, 4), (4, 3, 2)])
def test_universal_torsion_curvature_relations(random_input, n, m, seed):
    s = random_input(n, m, seed)
    tol = 1e-10 * (1.0 + s.scale**2)
    residuals = curvature_torsion_residuals(
        s.torsion, s.chern_torsion_derivative, s.chern_components, s.riemann_components
    )
    assert set(residuals) == {
        "chern_torsion_derivative",
        "riemannian_mixed_holomorphic",
        "riemannian_antiholomorphic_pair",
        "riemannian_hermitian_block",
        "chern_curvature_hermitian_pairing",
    }
    assert max(residuals.values()) <= tol
    decomposition = lee_form_decomposition_residuals(s.algebra, s.torsion, s.eta_derivative)
    assert max(decomposition.values()) <= tol * (1.0 + s.scale)


@pytest.mark.parametrize("name", ["kodaira", "hopf"])
def test_skl_torsion_identities_on_surfaces(request, name):
    s = request.getfixturevalue(name)
    tol = 1e-10 * (1.0 + s.scale**4)
    identities = skl_torsion_identities(s.torsion, s.strominger_torsion_derivative, s.derived.P)
    assert max(identities.values()) <= tol
    assert max(torsion_chain_residuals(s.torsion, s.derived).values()) <= tol
    assert max(parallel_tensor_residuals(s.derived, s.strominger).values()) <= tol
    assert max(lee_form_type_residuals(s.algebra, s.torsion, s.derived).values()) <= tol
    assert max(lee_form_criterion_residuals(s.torsion, s.eta_derivative).values()) <= tol
    assert np.abs(s.lee_form_derivative).max() <= tol


def test_torsion_form_wedge_needs_three_dimensions(kodaira, iwasawa):
    with pytest.raises(ValueError):
        torsion_form_wedge(kodaira.algebra)
    assert torsion_form_wedge(iwasawa.algebra).degrees() <= {6}
