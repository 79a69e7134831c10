"""
tests.test_geometry_exterior
Forms, evaluation and the Maurer-Cartan differential.
"""

import numpy as np
import pytest

from hermlab.core import catalog
from hermlab.core.errors import AlgebraError, AlgebraMismatchError, FormArityError
from hermlab.core.specfile import load_spec, to_algebra
from hermlab.geometry.exterior import (
    Form,
    FrameAlgebra,
    evaluate,
    one_form,
    partial,
    partial_bar,
    transform,
    type_leakage,
    validate_algebra,
    wedge,
)


def _random_form(n: int, degree: int, rng) -> Form:
    terms = {}
    for _ in range(6):
        key = tuple(rng.choice(2 * n, size=degree, replace=False))
        terms[key] = complex(rng.normal(), rng.normal())
    return Form(n, terms)


def test_unsorted_keys_pick_up_permutation_sign():
    assert Form(2, {(1, 0): 1.0}).allclose(Form(2, {(0, 1): -1.0}))
    assert Form(2, {(0, 0): 1.0}).is_zero()


def test_graded_commutativity():
    rng = np.random.default_rng(3)
    for a, b in ((1, 1), (1, 2), (2, 2), (1, 3)):
        u, v = _random_form(3, a, rng), _random_form(3, b, rng)
        sign = (-1) ** (a * b)
        assert (u.wedge(v) - v.wedge(u) * sign).is_zero(1e-12)


def test_evaluation_uses_determinant_convention():
    u = Form.phi(2, 0).wedge(Form.phi(2, 1))
    assert evaluate(u, (0, 1)) == 1
    assert evaluate(u, (1, 0)) == -1
    assert evaluate(u, (0, 0)) == 0
    assert evaluate(Form.zero(2), (0, 2)) == 0


def test_evaluation_arity_is_checked():
    u = Form.phi(2, 0).wedge(Form.phibar(2, 1))
    with pytest.raises(FormArityError):
        evaluate(u, (0,))
    with pytest.raises(FormArityError):
        evaluate(Form.phi(2, 0) + u, (0, 1))


def test_mismatched_dimensions_are_rejected():
    with pytest.raises(AlgebraMismatchError):
        Form.phi(2, 0) + Form.phi(3, 0)
    with pytest.raises(AlgebraMismatchError):
        Form(2, {(4,): 1.0})


def test_conjugation_swaps_types():
    u = Form.phi(2, 0).wedge(Form.phibar(2, 1)) * 2j
    assert u.conjugate().allclose(Form.phibar(2, 0).wedge(Form.phi(2, 1)) * -2j)
    v = Form.phi(3, 0).wedge(Form.phi(3, 2))
    assert v.conjugate().bidegrees() == {(0, 2)}
    assert v.conjugate().conjugate().allclose(v)


def test_wedge_of_several_forms():
    n = 2
    top = wedge(Form.phi(n, 0), Form.phi(n, 1), Form.phibar(n, 0), Form.phibar(n, 1))
    assert dict(top.terms) == {(0, 1, 2, 3): 1}
    with pytest.raises(ValueError):
        wedge()


def test_transform_substitutes_generators():
    m = np.array([[1.0, 2j], [0.5, -1.0]])
    image = transform(Form.phi(2, 0), m)
    assert image.allclose(one_form(2, [1.0, 2j, 0.0, 0.0]))
    bar = transform(Form.phibar(2, 0), m)
    assert bar.allclose(one_form(2, [0.0, 0.0, 1.0, -2j]))


@pytest.mark.parametrize("name", catalog.names())
def test_d_squared_vanishes_on_catalog(name):
    a = catalog.get(name).algebra
    for index in range(2 * a.n):
        assert a.d(a.differential(index)).is_zero(1e-12)
    assert validate_algebra(a, 1e-12) == []


def test_d_splits_into_partial_and_dbar():
    rng = np.random.default_rng(11)
    a = catalog.random_two_step(3, 2, 5)
    for degree in (1, 2, 3):
        u = _random_form(3, degree, rng)
        assert type_leakage(a, u) < 1e-12
        assert (a.d(u) - partial(a, u) - partial_bar(a, u)).is_zero(1e-12)


def test_kodaira_differential():
    a = catalog.get("kodaira").algebra
    assert a.differential(1).allclose(Form.phi(2, 0).wedge(Form.phibar(2, 0)))
    assert a.differential(3).allclose(Form.phibar(2, 0).wedge(Form.phi(2, 0)))
    assert a.differential(0).is_zero()


def test_validation_reports_nonintegrable_and_d_squared(fixtures_dir):
    a, _ = to_algebra(load_spec(fixtures_dir / "noninteg.json"))
    assert any("non-integrable" in v for v in validate_algebra(a, 1e-10))
    corrupt, _ = to_algebra(load_spec(fixtures_dir / "corrupt.json"))
    violations = validate_algebra(corrupt, 1e-10)
    assert violations and all("d²" in v for v in violations)


def test_frame_algebra_shape_checks():
    with pytest.raises(AlgebraError):
        FrameAlgebra.abelian(7)
    bad = np.zeros((2, 2, 2), dtype=complex)
    bad[0, 0, 1] = 1.0
    with pytest.raises(AlgebraError):
        FrameAlgebra(2, bad, np.zeros((2, 2, 2)))
    with pytest.raises(AlgebraError):
        FrameAlgebra(2, np.zeros((3, 3, 3)), np.zeros((2, 2, 2)))
