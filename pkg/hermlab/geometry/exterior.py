"""
hermlab.geometry.exterior

Exterior algebra over an invariant (1,0)-coframe with its Maurer–Cartan differential.

Generator indices run 0..n-1 for φ_1..φ_n and n..2n-1 for φ̄_1..φ̄_n; a monomial
key is a strictly increasing tuple of generator indices. Frame directions share the
indexing: direction i is e_{i+1} and direction n+i is ē_{i+1}.

Evaluation uses the determinant convention (α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X), with no
1/k! normalisation. All components in the invariant model are constant, so d and
every covariant derivative downstream are purely algebraic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from ..core.errors import (
    AlgebraError,
    AlgebraMismatchError,
    AlgebraValidationError,
    FormArityError,
)

Key = Tuple[int, ...]

MIN_DIMENSION = 2
MAX_DIMENSION = 6


def permutation_sign(indices: Sequence[int]) -> int:
    """Sign of the permutation sorting ``indices``; 0 when an index repeats."""
    if len(set(indices)) != len(indices):
        return 0
    sign = 1
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if indices[a] > indices[b]:
                sign = -sign
    return sign


def _shuffle_sign(left: Key, right: Key) -> int:
    # both keys sorted; sign of merging them, 0 on overlap
    sign = 1
    for a in left:
        for b in right:
            if a == b:
                return 0
            if a > b:
                sign = -sign
    return sign


def _merge(left: Key, right: Key) -> Tuple[int, Key]:
    sign = _shuffle_sign(left, right)
    if sign == 0:
        return 0, ()
    return sign, tuple(sorted(left + right))


class Form:
    """
    Graded element of the complexified exterior algebra on 2n generators.

    Coefficients are stored against canonical (sorted) monomial keys. Unsorted input
    keys are canonicalised with their permutation sign; keys with a repeated index
    are dropped.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Iterable[int], complex]] = None):
        self.n = n
        clean: Dict[Key, complex] = {}
        for raw, coeff in (terms or {}).items():
            indices = tuple(int(i) for i in raw)
            if any(i < 0 or i >= 2 * n for i in indices):
                raise AlgebraMismatchError(
                    f"Generator index out of range for n={n}: {indices}"
                )
            sign = permutation_sign(indices)
            if sign == 0 or coeff == 0:
                continue
            key = tuple(sorted(indices))
            clean[key] = clean.get(key, 0j) + sign * complex(coeff)
        self._terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def _wrap(cls, n: int, terms: Dict[Key, complex]) -> "Form":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = {k: v for k, v in terms.items() if v != 0}
        return obj

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls._wrap(n, {})

    @classmethod
    def constant(cls, n: int, value: complex) -> "Form":
        return cls._wrap(n, {(): complex(value)})

    @classmethod
    def generator(cls, n: int, index: int, coeff: complex = 1.0) -> "Form":
        if not 0 <= index < 2 * n:
            raise AlgebraMismatchError(f"Generator index {index} out of range for n={n}")
        return cls._wrap(n, {(index,): complex(coeff)})

    @classmethod
    def phi(cls, n: int, i: int) -> "Form":
        """φ_{i+1} (0-based i)."""
        return cls.generator(n, i)

    @classmethod
    def phibar(cls, n: int, i: int) -> "Form":
        """φ̄_{i+1} (0-based i)."""
        return cls.generator(n, n + i)

    @property
    def terms(self) -> Mapping[Key, complex]:
        return MappingProxyType(self._terms)

    def degrees(self) -> Set[int]:
        return {len(k) for k in self._terms}

    def bidegree(self, key: Key) -> Tuple[int, int]:
        p = sum(1 for i in key if i < self.n)
        return p, len(key) - p

    def bidegrees(self) -> Set[Tuple[int, int]]:
        return {self.bidegree(k) for k in self._terms}

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self._terms.values())

    def norm(self) -> float:
        """Euclidean norm of the canonical coefficient vector."""
        return math.sqrt(sum(abs(c) ** 2 for c in self._terms.values()))

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"Expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise AlgebraMismatchError(
                f"Cannot combine forms over n={self.n} and n={other.n}"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0j) + v
        return Form._wrap(self.n, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._wrap(self.n, {k: -v for k, v in self._terms.items()})

    def __mul__(self, scalar: complex) -> "Form":
        if isinstance(scalar, Form):
            raise TypeError("Use wedge() to multiply forms")
        c = complex(scalar)
        return Form._wrap(self.n, {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "Form":
        return self * (1.0 / complex(scalar))

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        out: Dict[Key, complex] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                sign, key = _merge(k1, k2)
                if sign:
                    out[key] = out.get(key, 0j) + sign * c1 * c2
        return Form._wrap(self.n, out)

    def conjugate(self) -> "Form":
        """Swap φ ↔ φ̄ and conjugate coefficients; maps (p,q) to (q,p)."""
        n = self.n
        out: Dict[Key, complex] = {}
        for key, c in self._terms.items():
            swapped = tuple(i + n if i < n else i - n for i in key)
            sign = permutation_sign(swapped)
            canonical = tuple(sorted(swapped))
            out[canonical] = out.get(canonical, 0j) + sign * c.conjugate()
        return Form._wrap(n, out)

    def type_part(self, p: int, q: int) -> "Form":
        return Form._wrap(
            self.n, {k: c for k, c in self._terms.items() if self.bidegree(k) == (p, q)}
        )

    def allclose(self, other: "Form", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self) -> str:
        if not self._terms:
            return "Form(0)"
        parts = []
        for key in sorted(self._terms, key=lambda k: (len(k), k)):
            names = [
                f"φ{i + 1}" if i < self.n else f"φ̄{i - self.n + 1}" for i in key
            ] or ["1"]
            parts.append(f"({self._terms[key]:.6g})·{'∧'.join(names)}")
        return " + ".join(parts)


FormMatrix = Tuple[Tuple[Form, ...], ...]


def wedge(*forms: Form) -> Form:
    """Wedge product of one or more forms, left to right."""
    if not forms:
        raise ValueError("wedge() needs at least one form")
    return reduce(lambda u, v: u.wedge(v), forms)


def wedge_power(u: Form, k: int) -> Form:
    """u∧…∧u (k factors); the 0th power is the constant 1."""
    result = Form.constant(u.n, 1.0)
    for _ in range(k):
        result = result.wedge(u)
    return result


def type_project(u: Form, p: int, q: int) -> Form:
    return u.type_part(p, q)


def evaluate(u: Form, directions: Sequence[int]) -> complex:
    """
    Evaluate a homogeneous form on an ordered list of frame directions.
    :param u: Form of a single degree (the zero form evaluates to 0 on any list).
    :param directions: Direction indices, i for e_{i+1} and n+i for ē_{i+1}.
    :return: Complex value under the determinant convention.
    :raises FormArityError: If the list length differs from the form degree.
    """
    dirs = tuple(int(x) for x in directions)
    if any(x < 0 or x >= 2 * u.n for x in dirs):
        raise FormArityError(f"Direction out of range for n={u.n}: {dirs}")
    degrees = u.degrees()
    if len(degrees) > 1:
        raise FormArityError(f"Cannot evaluate a non-homogeneous form (degrees {sorted(degrees)})")
    if degrees and degrees != {len(dirs)}:
        raise FormArityError(
            f"Form of degree {next(iter(degrees))} evaluated on {len(dirs)} directions"
        )
    sign = permutation_sign(dirs)
    if sign == 0:
        return 0j
    return sign * u.terms.get(tuple(sorted(dirs)), 0j)


def one_form_vector(u: Form) -> np.ndarray:
    """Values u(dir_a) for every direction a, as a length-2n vector."""
    if u.degrees() - {1}:
        raise FormArityError("one_form_vector expects a 1-form")
    vec = np.zeros(2 * u.n, dtype=complex)
    for (a,), c in u.terms.items():
        vec[a] = c
    return vec


def two_form_array(u: Form) -> np.ndarray:
    """Values u(dir_a, dir_b) for every direction pair, as a (2n, 2n) array."""
    if u.degrees() - {2}:
        raise FormArityError("two_form_array expects a 2-form")
    arr = np.zeros((2 * u.n, 2 * u.n), dtype=complex)
    for (a, b), c in u.terms.items():
        arr[a, b] = c
        arr[b, a] = -c
    return arr


def one_form(n: int, vector: Sequence[complex]) -> Form:
    """Inverse of one_form_vector."""
    return Form._wrap(n, {(a,): complex(c) for a, c in enumerate(vector)})


def transform(u: Form, matrix: np.ndarray) -> Form:
    """
    Substitute φ_i ↦ Σ_k M_{ik} φ_k (and φ̄_i ↦ Σ_k conj(M_{ik}) φ̄_k) in ``u``.
    :param matrix: n×n complex matrix.
    """
    n = u.n
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (n, n):
        raise AlgebraMismatchError(f"Substitution matrix must be {n}x{n}, got {m.shape}")
    images = [one_form(n, np.concatenate([m[i], np.zeros(n)])) for i in range(n)]
    images += [one_form(n, np.concatenate([np.zeros(n), m[i].conj()])) for i in range(n)]
    out = Form.zero(n)
    for key, c in u.terms.items():
        term = Form.constant(n, c)
        for index in key:
            term = term.wedge(images[index])
        out = out + term
    return out


@dataclass(frozen=True, eq=False)
class FrameAlgebra:
    """
    Structure constants of an invariant (1,0)-coframe.

    dφ_k = Σ_{i,j} dphi20[k,i,j] φ_i∧φ_j + Σ_{i,j} dphi11[k,i,j] φ_i∧φ̄_j
           + Σ_{i,j} dphi02[k,i,j] φ̄_i∧φ̄_j

    dphi20 and dphi02 are skew in (i,j). dphi02 is zero for an integrable complex
    structure; it is kept so that validation can report the violation. ``unitary``
    marks a coframe in which the metric is the identity.
    """

    n: int
    dphi20: np.ndarray
    dphi11: np.ndarray
    dphi02: Optional[np.ndarray] = None
    name: str = ""
    unitary: bool = False
    _cache: Dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = int(self.n)
        if not MIN_DIMENSION <= n <= MAX_DIMENSION:
            raise AlgebraError(
                f"Complex dimension must be between {MIN_DIMENSION} and {MAX_DIMENSION}, got {n}"
            )
        object.__setattr__(self, "n", n)
        for attr in ("dphi20", "dphi11", "dphi02"):
            raw = getattr(self, attr)
            arr = (
                np.zeros((n, n, n), dtype=complex)
                if raw is None
                else np.array(raw, dtype=complex)
            )
            if arr.shape != (n, n, n):
                raise AlgebraError(f"{attr} must have shape {(n, n, n)}, got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
        for attr in ("dphi20", "dphi02"):
            arr = getattr(self, attr)
            asym = np.abs(arr + arr.transpose(0, 2, 1)).max()
            if asym > 1e-12 * (1.0 + np.abs(arr).max()):
                raise AlgebraError(f"{attr} must be skew in its last two indices")

    @classmethod
    def abelian(cls, n: int, name: str = "") -> "FrameAlgebra":
        zeros = np.zeros((n, n, n), dtype=complex)
        return cls(n, zeros, zeros, name=name)

    @property
    def structure_scale(self) -> float:
        """Largest structure-constant modulus."""
        return float(
            max(np.abs(self.dphi20).max(), np.abs(self.dphi11).max(), np.abs(self.dphi02).max())
        )

    def e(self, i: int) -> int:
        """Direction index of e_{i+1}."""
        return i

    def ebar(self, i: int) -> int:
        """Direction index of ē_{i+1}."""
        return self.n + i

    def differential(self, index: int) -> Form:
        """d of the generator with the given index (φ for index < n, φ̄ otherwise)."""
        cached = self._cache.get(("gen", index))
        if cached is not None:
            return cached
        n = self.n
        if index >= n:
            result = self.differential(index - n).conjugate()
        else:
            terms: Dict[Key, complex] = {}
            for i in range(n):
                for j in range(n):
                    for key, coeff in (
                        ((i, j), self.dphi20[index, i, j]),
                        ((i, n + j), self.dphi11[index, i, j]),
                        ((n + i, n + j), self.dphi02[index, i, j]),
                    ):
                        if coeff != 0:
                            terms[key] = coeff
            result = Form(n, terms)
        self._cache[("gen", index)] = result
        return result

    def _d_monomial(self, key: Key) -> Dict[Key, complex]:
        cached = self._cache.get(("mono", key))
        if cached is not None:
            return cached
        out: Dict[Key, complex] = {}
        for pos, index in enumerate(key):
            left, right = key[:pos], key[pos + 1 :]
            leibniz = -1 if pos % 2 else 1
            for gkey, gcoeff in self.differential(index).terms.items():
                s1, merged = _merge(left, gkey)
                if not s1:
                    continue
                s2, full = _merge(merged, right)
                if not s2:
                    continue
                out[full] = out.get(full, 0j) + leibniz * s1 * s2 * gcoeff
        self._cache[("mono", key)] = out
        return out

    def d(self, u: Form) -> Form:
        """Exterior derivative, extended from generators as an anti-derivation."""
        if u.n != self.n:
            raise AlgebraMismatchError(f"Form over n={u.n} used with algebra n={self.n}")
        out: Dict[Key, complex] = {}
        for key, coeff in u.terms.items():
            for k, c in self._d_monomial(key).items():
                out[k] = out.get(k, 0j) + coeff * c
        return Form._wrap(self.n, out)


def d(a: FrameAlgebra, u: Form) -> Form:
    return a.d(u)


def partial(a: FrameAlgebra, u: Form) -> Form:
    """∂u: the (p+1, q) part of d applied to each (p, q) component."""
    out = Form.zero(a.n)
    for p, q in u.bidegrees():
        out = out + a.d(u.type_part(p, q)).type_part(p + 1, q)
    return out


def partial_bar(a: FrameAlgebra, u: Form) -> Form:
    """∂̄u: the (p, q+1) part of d applied to each (p, q) component."""
    out = Form.zero(a.n)
    for p, q in u.bidegrees():
        out = out + a.d(u.type_part(p, q)).type_part(p, q + 1)
    return out


def type_leakage(a: FrameAlgebra, u: Form) -> float:
    """Norm of d u − ∂u − ∂̄u; zero over an integrable algebra."""
    return (a.d(u) - partial(a, u) - partial_bar(a, u)).norm()


def validate_algebra(a: FrameAlgebra, tol: float) -> List[str]:
    """
    Check integrability and d² = 0 on every coframe generator.
    :param tol: Absolute tolerance on coefficient magnitudes.
    :return: Human-readable violations; empty when the algebra is valid.
    """
    violations = []
    for k in range(a.n):
        if np.abs(a.dphi02[k]).max() > tol:
            violations.append(f"non-integrable: (0,2) part in dφ_{k + 1}")
    for k in range(a.n):
        residual = a.d(a.differential(k)).norm()
        if residual > tol:
            violations.append(f"d² ≠ 0 on φ_{k + 1} (residual {residual:.3e})")
    return violations


def ensure_valid(a: FrameAlgebra, tol: float) -> FrameAlgebra:
    """
    Return ``a`` unchanged, or raise with the diagnostics of validate_algebra.
    :raises AlgebraValidationError: If any violation is found.
    """
    violations = validate_algebra(a, tol)
    if violations:
        label = f" '{a.name}'" if a.name else ""
        raise AlgebraValidationError(
            f"Invalid algebra{label}: " + "; ".join(violations), violations
        )
    return a


def zero_matrix(n: int, rows: Optional[int] = None, cols: Optional[int] = None) -> FormMatrix:
    rows = n if rows is None else rows
    cols = rows if cols is None else cols
    return tuple(tuple(Form.zero(n) for _ in range(cols)) for _ in range(rows))


def matrix_add(x: FormMatrix, y: FormMatrix) -> FormMatrix:
    return tuple(tuple(a + b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def matrix_sub(x: FormMatrix, y: FormMatrix) -> FormMatrix:
    return tuple(tuple(a - b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def matrix_scale(c: complex, x: FormMatrix) -> FormMatrix:
    return tuple(tuple(a * c for a in row) for row in x)


def matrix_wedge(x: FormMatrix, y: FormMatrix) -> FormMatrix:
    """(x∧y)_{ij} = Σ_k x_{ik}∧y_{kj}."""
    inner = len(y)
    return tuple(
        tuple(
            reduce(lambda s, k: s + row[k].wedge(y[k][j]), range(inner), Form.zero(row[0].n))
            for j in range(len(y[0]))
        )
        for row in x
    )


def matrix_conjugate(x: FormMatrix) -> FormMatrix:
    return tuple(tuple(a.conjugate() for a in row) for row in x)


def matrix_transpose(x: FormMatrix) -> FormMatrix:
    return tuple(zip(*x))


def matrix_d(a: FrameAlgebra, x: FormMatrix) -> FormMatrix:
    return tuple(tuple(a.d(u) for u in row) for row in x)


def matrix_type_part(x: FormMatrix, p: int, q: int) -> FormMatrix:
    return tuple(tuple(u.type_part(p, q) for u in row) for row in x)


def matrix_norm(x: FormMatrix) -> float:
    return math.sqrt(sum(u.norm() ** 2 for row in x for u in row))
