"""
hermlab.core.catalog

Built-in reference structures and random generators of valid two-step algebras.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..geometry.exterior import MAX_DIMENSION, FrameAlgebra, ensure_valid
from ..geometry.hermitian import HermitianMetric
from ..geometry.structure import HermitianStructure
from .config import DEFAULT_TOLERANCE
from .errors import CatalogError
from .specfile import ManifoldSpecFile, from_algebra


@dataclass(frozen=True)
class CatalogEntry:
    """
    Reference structure with the predicate values it is known to have.
    ``provenance`` is "[PAPER]" for values stated in the literature and "[DERIVED]" for
    values computed by hand or by this package.
    """

    name: str
    algebra: FrameAlgebra
    metric: HermitianMetric
    expected: Dict[str, bool] = field(default_factory=dict)
    provenance: str = "[DERIVED]"
    description: str = ""

    @property
    def n(self) -> int:
        return self.algebra.n

    def structure(self, tol: float = DEFAULT_TOLERANCE) -> HermitianStructure:
        return HermitianStructure.from_input(self.algebra, self.metric, tol=tol)

    def spec(self) -> ManifoldSpecFile:
        return from_algebra(self.algebra, self.metric, name=self.name)


def _zeros(n: int) -> np.ndarray:
    return np.zeros((n, n, n), dtype=complex)


def _kodaira_constants():
    dphi11 = _zeros(2)
    dphi11[1, 0, 0] = 1.0  # dφ₂ = φ₁∧φ̄₁
    return _zeros(2), dphi11


def _hopf_constants():
    dphi20, dphi11 = _zeros(2), _zeros(2)
    # dφ₁ = −(i/2)(φ₁∧φ₂ + φ₁∧φ̄₂), dφ₂ = (i/2) φ₁∧φ̄₁
    dphi20[0, 0, 1] = -0.25j
    dphi20[0, 1, 0] = 0.25j
    dphi11[0, 0, 1] = -0.5j
    dphi11[1, 0, 0] = 0.5j
    return dphi20, dphi11


def _iwasawa_constants():
    dphi20 = _zeros(3)
    dphi20[2, 0, 1] = -0.5  # dφ₃ = −φ₁∧φ₂
    dphi20[2, 1, 0] = 0.5
    return dphi20, _zeros(3)


def _times_flat(dphi20: np.ndarray, dphi11: np.ndarray, extra: int = 1):
    """Constants of the product with a flat factor of the given dimension."""
    n = dphi20.shape[0] + extra
    out20, out11 = _zeros(n), _zeros(n)
    m = dphi20.shape[0]
    out20[:m, :m, :m] = dphi20
    out11[:m, :m, :m] = dphi11
    return out20, out11


FLAT = {
    "kahler": True,
    "balanced": True,
    "gauduchon": True,
    "pluriclosed": True,
    "skl": True,
    "chern_flat": True,
    "strominger_flat": True,
    "torsion_parallel": True,
}

SKL_NON_KAHLER = {
    "kahler": False,
    "balanced": False,
    "gauduchon": True,
    "pluriclosed": True,
    "skl": True,
    "torsion_parallel": True,
}


def _build() -> Dict[str, CatalogEntry]:
    entries: List[CatalogEntry] = []
    for n in (2, 3):
        expected = dict(FLAT, vaisman=True) if n == 2 else dict(FLAT)
        entries.append(
            CatalogEntry(
                f"torus{n}",
                FrameAlgebra.abelian(n, name=f"torus{n}"),
                HermitianMetric.identity(n),
                expected,
                "[DERIVED]",
                f"Flat complex torus of dimension {n}",
            )
        )
    entries.append(
        CatalogEntry(
            "kodaira",
            FrameAlgebra(2, *_kodaira_constants(), name="kodaira"),
            HermitianMetric.identity(2),
            dict(SKL_NON_KAHLER, strominger_flat=False, vaisman=True),
            "[PAPER]",
            "Primary Kodaira surface, dφ₂ = φ₁∧φ̄₁",
        )
    )
    entries.append(
        CatalogEntry(
            "hopf",
            FrameAlgebra(2, *_hopf_constants(), name="hopf"),
            HermitianMetric.identity(2),
            dict(SKL_NON_KAHLER, strominger_flat=True, vaisman=True),
            "[DERIVED]",
            "Hopf surface modelled on su(2)⊕u(1) with its standard metric",
        )
    )
    entries.append(
        CatalogEntry(
            "iwasawa",
            FrameAlgebra(3, *_iwasawa_constants(), name="iwasawa"),
            HermitianMetric.identity(3),
            {
                "kahler": False,
                "balanced": True,
                "gauduchon": True,
                "pluriclosed": False,
                "skl": False,
                "chern_flat": True,
                "strominger_flat": False,
                "torsion_parallel": False,
            },
            "[DERIVED]",
            "Iwasawa manifold, dφ₃ = −φ₁∧φ₂",
        )
    )
    for base, constants, flat in (
        ("kodaira", _kodaira_constants, False),
        ("hopf", _hopf_constants, True),
    ):
        name = f"{base}_x_elliptic"
        entries.append(
            CatalogEntry(
                name,
                FrameAlgebra(3, *_times_flat(*constants()), name=name),
                HermitianMetric.identity(3),
                dict(SKL_NON_KAHLER, strominger_flat=flat),
                "[DERIVED]",
                f"Product of the {base} surface with an elliptic curve",
            )
        )
    return {e.name: e for e in entries}


_ENTRIES: Optional[Dict[str, CatalogEntry]] = None


def _entries() -> Dict[str, CatalogEntry]:
    global _ENTRIES
    if _ENTRIES is None:
        _ENTRIES = _build()
    return _ENTRIES


def names() -> List[str]:
    return list(_entries())


def get(name: str) -> CatalogEntry:
    """
    Look up a catalog entry.
    :raises CatalogError: For an unknown name.
    """
    try:
        return _entries()[name]
    except KeyError:
        raise CatalogError(
            f"Unknown catalog entry '{name}'; available: {', '.join(names())}"
        ) from None


def random_two_step(n: int, m: int, seed: int) -> FrameAlgebra:
    """
    Random two-step algebra: dφ_k = 0 for k ≤ m, and for k > m a random combination of
    φ_a∧φ_b and φ_a∧φ̄_b with a, b ≤ m. d² = 0 and integrability hold by construction.
    :raises CatalogError: Unless 1 ≤ m < n ≤ 6.
    """
    if not (1 <= m < n <= MAX_DIMENSION):
        raise CatalogError(f"Need 1 ≤ split < dim ≤ {MAX_DIMENSION}, got dim={n}, split={m}")
    rng = np.random.default_rng(seed)
    dphi20, dphi11 = _zeros(n), _zeros(n)
    size = (n - m, m, m)
    raw20 = rng.normal(size=size) + 1j * rng.normal(size=size)
    raw11 = rng.normal(size=size) + 1j * rng.normal(size=size)
    dphi20[m:, :m, :m] = 0.5 * (raw20 - raw20.transpose(0, 2, 1))
    dphi11[m:, :m, :m] = raw11
    algebra = FrameAlgebra(n, dphi20, dphi11, name=f"random-{n}-{m}-{seed}")
    return ensure_valid(algebra, 1e-12)


def random_metric(n: int, seed: int) -> HermitianMetric:
    """g = I + 0.3 M M*/n with a complex Gaussian M."""
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    g = np.eye(n) + 0.3 * (m @ m.conj().T) / n
    return HermitianMetric(0.5 * (g + g.conj().T))


