"""
hermlab.core.specfile

Manifold-spec files: JSON schema, parsing into structure constants and export.

Indices in files are 1-based. A "10-10" term with coefficient c on φ_i∧φ_j adds c/2
to dphi20[k,i,j] and −c/2 to dphi20[k,j,i]; "10-01" adds c to dphi11[k,i,j];
"01-01" fills dphi02 the same way as "10-10", so that validation can report the
non-integrable part. Complex numbers are ``[re, im]`` pairs.
"""

import json
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from ..geometry.exterior import MAX_DIMENSION, MIN_DIMENSION, FrameAlgebra
from ..geometry.hermitian import HermitianMetric
from .errors import MetricError, SpecFileError
from .types import ComplexPair, from_pair, to_pair, write_atomic

TermKind = Literal["10-10", "10-01", "01-01"]
EXPORT_CUTOFF = 1e-15


class SpecTerm(BaseModel):
    """One term c·(form) in dφ_k."""

    k: int = Field(ge=1)
    kind: TermKind
    i: int = Field(ge=1)
    j: int = Field(ge=1)
    coeff: ComplexPair


class ManifoldSpecFile(BaseModel):
    name: str = ""
    dim: int = Field(ge=MIN_DIMENSION, le=MAX_DIMENSION)
    dphi: List[SpecTerm] = Field(default_factory=list)
    metric: Optional[List[List[ComplexPair]]] = None


def parse_spec(source: Union[str, dict]) -> ManifoldSpecFile:
    """
    Parse a spec from JSON text or an already decoded mapping.
    :raises SpecFileError: On malformed JSON or schema violations.
    """
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as e:
            raise SpecFileError(f"Invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    try:
        return ManifoldSpecFile.model_validate(source)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(part) for part in first["loc"])
        prefix = _term_prefix(first["loc"])
        raise SpecFileError(f"{prefix}{loc}: {first['msg']}") from e


def _term_prefix(loc: Tuple) -> str:
    if len(loc) >= 2 and loc[0] == "dphi" and isinstance(loc[1], int):
        return f"term {loc[1] + 1}: "
    return ""


def load_spec(path: Union[str, Path]) -> ManifoldSpecFile:
    """
    Read and parse a spec file.
    :raises SpecFileError: If the file cannot be read or parsed.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFileError(f"Cannot read {path}: {e}") from e
    return parse_spec(text)


def to_algebra(spec: ManifoldSpecFile) -> Tuple[FrameAlgebra, HermitianMetric]:
    """
    Build structure constants and metric; validity is checked downstream.
    :raises SpecFileError: On out-of-range indices or a vanishing φ_i∧φ_i term.
    :raises MetricError: If the metric is not Hermitian positive definite.
    """
    n = spec.dim
    arrays = {kind: np.zeros((n, n, n), dtype=complex) for kind in ("10-10", "10-01", "01-01")}
    for index, term in enumerate(spec.dphi, start=1):
        for label, value in (("k", term.k), ("i", term.i), ("j", term.j)):
            if value > n:
                raise SpecFileError(f"term {index}: index {label}={value} exceeds dim {n}")
        k, i, j = term.k - 1, term.i - 1, term.j - 1
        c = from_pair(term.coeff)
        if term.kind == "10-01":
            arrays["10-01"][k, i, j] += c
            continue
        if i == j:
            raise SpecFileError(f"term {index}: {term.kind} term with i = j = {term.i} vanishes")
        arrays[term.kind][k, i, j] += c / 2
        arrays[term.kind][k, j, i] -= c / 2
    algebra = FrameAlgebra(
        n, arrays["10-10"], arrays["10-01"], arrays["01-01"], name=spec.name
    )
    if spec.metric is None:
        return algebra, HermitianMetric.identity(n)
    g = np.array([[from_pair(x) for x in row] for row in spec.metric], dtype=complex)
    if g.shape != (n, n):
        raise MetricError(f"Metric must be {n}x{n}, got {g.shape}")
    return algebra, HermitianMetric(g)


def from_algebra(
    algebra: FrameAlgebra, metric: Optional[HermitianMetric] = None, name: Optional[str] = None
) -> ManifoldSpecFile:
    """
    Export structure constants in canonical term order (k, kind, i, j).
    The metric is omitted when it is the identity.
    """
    n = algebra.n
    terms = []
    for k in range(n):
        for kind, arr, skew in (
            ("10-10", algebra.dphi20, True),
            ("10-01", algebra.dphi11, False),
            ("01-01", algebra.dphi02, True),
        ):
            for i in range(n):
                for j in range(n):
                    if skew and j <= i:
                        continue
                    c = 2.0 * arr[k, i, j] if skew else arr[k, i, j]
                    if abs(c) > EXPORT_CUTOFF:
                        terms.append(
                            SpecTerm(k=k + 1, kind=kind, i=i + 1, j=j + 1, coeff=to_pair(c))
                        )
    matrix = None
    if metric is not None and not np.array_equal(metric.g, np.eye(n)):
        matrix = [[to_pair(x) for x in row] for row in metric.g]
    return ManifoldSpecFile(
        name=algebra.name if name is None else name, dim=n, dphi=terms, metric=matrix
    )


def dump_spec(spec: ManifoldSpecFile) -> str:
    return spec.model_dump_json(indent=2, exclude_none=True) + "\n"


def save_spec(spec: ManifoldSpecFile, path: Union[str, Path]) -> None:
    write_atomic(path, dump_spec(spec))
