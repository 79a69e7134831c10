"""
tests.test_geometry_hermitian
Metrics, coframe changes and unitary reduction.
"""

import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from hermlab.core import catalog
from hermlab.core.errors import FrameError, MetricError
from hermlab.geometry.exterior import Form, transform, validate_algebra, wedge_power
from hermlab.geometry.hermitian import (
    HermitianMetric,
    change_coframe,
    kahler_form,
    kahler_power,
    rotate,
    unitary_reduce,
    volume_form,
)


def test_metric_validation():
    with pytest.raises(MetricError):
        HermitianMetric(np.array([[1.0, 1j], [1j, 1.0]]))
    with pytest.raises(MetricError):
        HermitianMetric(np.diag([1.0, -1.0]))
    with pytest.raises(MetricError):
        HermitianMetric(np.ones((2, 3)))


def test_cholesky_factor_is_lower_with_positive_diagonal():
    g = catalog.random_metric(3, 4)
    l = g.cholesky()
    assert np.allclose(l, np.tril(l))
    assert np.all(np.diag(l).real > 0)
    assert np.allclose(l @ l.conj().T, g.g)


def test_identity_metric_keeps_constants():
    a = catalog.get("kodaira").algebra
    u = unitary_reduce(a, HermitianMetric.identity(2))
    assert u.unitary
    assert np.array_equal(u.dphi11, a.dphi11)


def test_reduction_preserves_d_squared():
    a = catalog.get("kodaira").algebra
    u = unitary_reduce(a, catalog.random_metric(2, 9))
    assert u.unitary
    assert validate_algebra(u, 1e-10) == []


def test_reduction_coframe_is_l_star_of_conjugate_metric():
    a = catalog.random_two_step(3, 2, 5)
    g = catalog.random_metric(3, 5)
    u = unitary_reduce(a, g)
    l = g.cholesky()
    conjugate = HermitianMetric(g.g.conj()).cholesky()
    assert np.allclose(conjugate, l.conj())
    # ψ = ᵗL φ for g is ψ = L* φ for ḡ
    v = change_coframe(a, conjugate.conj().T, unitary=True)
    assert np.allclose(u.dphi20, v.dphi20)
    assert np.allclose(u.dphi11, v.dphi11)
    omega = Form.zero(3)
    for k in range(3):
        omega = omega + Form.phi(3, k).wedge(Form.phibar(3, k))
    expected = Form.zero(3)
    for i in range(3):
        for j in range(3):
            expected = expected + Form.phi(3, i).wedge(Form.phibar(3, j)) * g.g[i, j]
    assert transform(omega, l.T).allclose(expected, 1e-10)


def test_reduction_rejects_wrong_dimension():
    with pytest.raises(MetricError):
        unitary_reduce(catalog.get("kodaira").algebra, HermitianMetric.identity(3))


def test_coframe_change_rewrites_differentials():
    a = catalog.random_two_step(3, 2, 2)
    m = np.array([[1.0, 0.5j, 0.0], [0.2, 2.0, 0.0], [0.0, 1.0 - 1j, 1.5]])
    b = change_coframe(a, m)
    inv = np.linalg.inv(m)
    for row in range(3):
        old = Form.zero(3)
        for k in range(3):
            old = old + a.differential(k) * m[row, k]
        assert b.differential(row).allclose(transform(old, inv), 1e-10)


def test_coframe_change_errors():
    a = catalog.get("kodaira").algebra
    with pytest.raises(FrameError):
        change_coframe(a, np.zeros((2, 2)))
    with pytest.raises(FrameError):
        change_coframe(a, np.eye(3))
    with pytest.raises(FrameError):
        rotate(a, np.diag([1.0, 2.0]))


def test_rotation_keeps_unitarity():
    s = catalog.get("hopf").structure()
    u = unitary_group.rvs(2, random_state=1)
    assert rotate(s.algebra, u).unitary


@pytest.mark.parametrize("n", [2, 3, 4])
def test_volume_form_is_normalised_top_power(n):
    a = catalog.random_two_step(n, 1, 0)
    omega = kahler_form(a)
    assert volume_form(a).allclose(wedge_power(omega, n) / math.factorial(n))
    assert kahler_power(a, n - 1).allclose(wedge_power(omega, n - 1))
    assert kahler_power(a, 0).allclose(Form.constant(n, 1.0))
