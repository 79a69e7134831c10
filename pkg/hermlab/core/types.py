"""
hermlab.core.types

Report models, check statuses and output destinations.
"""

import json
import os
import tempfile
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from .base import OutputDestination

ComplexPair = Tuple[float, float]


def to_pair(value: complex) -> ComplexPair:
    """Serialize a complex number as ``[re, im]``."""
    value = complex(value)
    return (float(value.real), float(value.imag))


def from_pair(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


class CheckStatus(str, Enum):
    """Outcome of one identity or implication check."""

    PASS = "pass"
    VACUOUS = "vacuous"
    FAIL = "fail"
    NOT_IMPLEMENTED = "not_implemented"

    @property
    def ok(self) -> bool:
        return self is not CheckStatus.FAIL


class InputInfo(BaseModel):
    """Provenance of the analysed structure."""

    name: str = ""
    dim: int
    seed: Optional[int] = None


class PredicateResult(BaseModel):
    """
    Boolean classification together with the residual that decided it.
    ``value`` and ``residual`` are None only for predicates that are not implemented.
    """

    value: Optional[bool]
    residual: Optional[float] = None
    scale: float = 0.0
    status: CheckStatus = CheckStatus.PASS


class IdentityResult(BaseModel):
    status: CheckStatus
    residual: float = 0.0
    scale: float = 0.0
    suite: str
    description: str = ""


class TraceRecord(BaseModel):
    """One accepted step of a metric search."""

    iteration: int
    params: List[float]
    skl_residual: float
    pluriclosed_residual: float
    torsion_parallel_residual: float


class SearchTrace(BaseModel):
    """
    Outcome of one metric search.

    ``report_tolerance`` is the tolerance the attached report was graded at. It
    exceeds the requested one when the optimizer's residual limits the accuracy
    of the witness.
    """

    method: str
    seed: int
    status: Literal["converged", "max_iter", "stalled"]
    iterations: int
    final_residual: float
    report_tolerance: Optional[float] = None
    records: List[TraceRecord] = Field(default_factory=list)


class Report(BaseModel):
    """Machine-readable verification report."""

    input: InputInfo
    tolerance: float
    predicates: Dict[str, PredicateResult] = Field(default_factory=dict)
    identities: Dict[str, IdentityResult] = Field(default_factory=dict)
    scalars: Dict[str, float] = Field(default_factory=dict)
    trace: Optional[SearchTrace] = None

    def failures(self) -> List[str]:
        """Identifiers of failing checks, in report order."""
        return [key for key, res in self.identities.items() if res.status is CheckStatus.FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def to_json(self, indent: Optional[int] = 2) -> str:
        return self.model_dump_json(indent=indent, exclude_none=True)


class FileOutputDestination(OutputDestination):
    """
    Output destination writing a report as JSON, atomically.
    """

    def __init__(self, path: os.PathLike, description: Optional[str] = None):
        """
        :param path: Target file; its directory is created when missing.
        :param description: Description for the output.
        """
        self.path = Path(path)
        self.description: Optional[str] = description

    def send(self, value: Any, harness=None):
        if isinstance(value, BaseModel):
            payload = value.model_dump_json(indent=2, exclude_none=True)
        else:
            payload = json.dumps(value, indent=2, sort_keys=True)
        write_atomic(self.path, payload + "\n")


def write_atomic(path: os.PathLike, text: str) -> None:
    """Write text through a temporary file in the same directory and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
