"""
hermlab.core.search

Derivative-free minimisation of the SKL residual over invariant Hermitian metrics on a
fixed algebra.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from ..geometry.curvature import phi_wedge_curvature
from ..geometry.exterior import FrameAlgebra, ensure_valid, matrix_norm
from ..geometry.hermitian import HermitianMetric, unitary_reduce
from ..geometry.structure import HermitianStructure
from .classify import pluriclosed_residual, theorem_suite, torsion_parallel_residual
from .config import DEFAULT_TOLERANCE, HarnessConfig, SearchOptions
from .logging import get_logger
from .types import Report, SearchTrace, TraceRecord

logger = get_logger(__name__)

METHODS = {"nelder-mead": "Nelder-Mead", "powell": "Powell"}


@dataclass(frozen=True)
class MetricParameterization:
    """
    g = L L* with L lower triangular, diagonal exp(p) and L₁₁ = 1.

    The vector holds the n − 1 log-diagonal entries followed by the real and
    imaginary parts of the strictly lower entries, n² − 1 reals in total.
    """

    n: int

    @property
    def size(self) -> int:
        return self.n * self.n - 1

    def factor(self, params: np.ndarray) -> np.ndarray:
        n = self.n
        params = np.asarray(params, dtype=float)
        if params.shape != (self.size,):
            raise ValueError(f"Expected {self.size} parameters, got {params.shape}")
        l = np.zeros((n, n), dtype=complex)
        l[np.diag_indices(n)] = np.exp(np.concatenate([[0.0], params[: n - 1]]))
        rows, cols = np.tril_indices(n, -1)
        off = params[n - 1 :]
        half = len(rows)
        l[rows, cols] = off[:half] + 1j * off[half:]
        return l

    def metric(self, params: np.ndarray) -> HermitianMetric:
        l = self.factor(params)
        g = l @ l.conj().T
        return HermitianMetric(0.5 * (g + g.conj().T))

    def params_for(self, metric: HermitianMetric) -> np.ndarray:
        """Parameters of the metric rescaled so that L₁₁ = 1."""
        l = metric.cholesky()
        l = l / l[0, 0].real
        rows, cols = np.tril_indices(self.n, -1)
        lower = l[rows, cols]
        return np.concatenate([np.log(np.diag(l).real[1:]), lower.real, lower.imag])

    def identity(self) -> np.ndarray:
        return np.zeros(self.size)

    def perturbed(self, seed: int, spread: float) -> np.ndarray:
        """Identity parameters plus Gaussian noise of the given spread."""
        return spread * np.random.default_rng(seed).normal(size=self.size)


def _structure(a: FrameAlgebra, metric: HermitianMetric) -> HermitianStructure:
    return HermitianStructure(unitary_reduce(a, metric))


def structure_residual(s: HermitianStructure) -> float:
    """‖ᵗφ∧Θˢ‖² / s² with s = Σ|coefficients of dψ_k|²; zero on abelian algebras."""
    a = s.algebra
    size = sum(a.differential(k).norm() ** 2 for k in range(a.n))
    if size == 0.0:
        return 0.0
    return matrix_norm(phi_wedge_curvature(s.strominger_curvature)) ** 2 / size**2


def skl_residual(a: FrameAlgebra, params: Optional[np.ndarray] = None) -> float:
    """
    Scale-invariant SKL residual of the metric with the given parameters.
    :param params: Parameter vector; the identity metric when omitted.
    """
    p = MetricParameterization(a.n)
    params = p.identity() if params is None else params
    return structure_residual(_structure(a, p.metric(params)))


@dataclass
class SearchResult:
    params: np.ndarray
    metric: HermitianMetric
    trace: SearchTrace
    report: Optional[Report] = None

    @property
    def converged(self) -> bool:
        return self.trace.status == "converged"


def _record(a: FrameAlgebra, p: MetricParameterization, iteration: int, x: np.ndarray) -> TraceRecord:
    s = _structure(a, p.metric(x))
    return TraceRecord(
        iteration=iteration,
        params=[float(v) for v in x],
        skl_residual=structure_residual(s),
        pluriclosed_residual=pluriclosed_residual(s),
        torsion_parallel_residual=torsion_parallel_residual(s),
    )


def minimize(
    a: FrameAlgebra,
    init: Optional[np.ndarray] = None,
    options: Optional[SearchOptions] = None,
    tol: float = DEFAULT_TOLERANCE,
) -> SearchResult:
    """
    Search for an SKL metric on ``a``.

    The search stops once the residual drops to ``residual_tol``, when the simplex
    (or Powell step) shrinks below ``step_tol``, or after ``max_iter`` iterations.
    Non-convergence is reported in the trace status, never raised. Converged results
    carry the full verification report.
    :param init: Starting parameters; the identity metric when omitted.
    :raises AlgebraValidationError: If the algebra is invalid.
    """
    options = options or SearchOptions()
    ensure_valid(a, tol * (1.0 + a.structure_scale**2))
    p = MetricParameterization(a.n)
    x0 = p.identity() if init is None else np.asarray(init, dtype=float)
    method = METHODS[options.method]
    records = [_record(a, p, 0, x0)]

    if a.structure_scale == 0.0 or records[0].skl_residual <= options.residual_tol:
        trace = SearchTrace(
            method=method, seed=options.seed, status="converged", iterations=0,
            final_residual=records[0].skl_residual, records=records,
        )
        return _finish(a, p, x0, trace, tol)

    def objective(x: np.ndarray) -> float:
        return skl_residual(a, x)

    def callback(intermediate_result):
        record = _record(a, p, len(records), intermediate_result.x)
        records.append(record)
        if record.skl_residual <= options.residual_tol:
            raise StopIteration

    if method == "Nelder-Mead":
        rng = np.random.default_rng(options.seed)
        simplex = np.vstack(
            [x0, x0 + options.perturbation * rng.normal(size=(p.size, p.size))]
        )
        solver_options = {
            "maxiter": options.max_iter,
            "xatol": options.step_tol,
            "fatol": options.residual_tol * 1e-6,
            "initial_simplex": simplex,
        }
    else:
        solver_options = {
            "maxiter": options.max_iter,
            "xtol": max(options.step_tol, 1e-12),
            "ftol": options.residual_tol * 1e-6,
            "direc": options.perturbation * np.eye(p.size),
        }
    result = scipy_minimize(
        objective, x0, method=method, callback=callback, options=solver_options
    )
    best = np.asarray(result.x, dtype=float)
    final = skl_residual(a, best)
    if final <= options.residual_tol:
        status = "converged"
    elif result.nit >= options.max_iter:
        status = "max_iter"
    else:
        status = "stalled"
    trace = SearchTrace(
        method=method, seed=options.seed, status=status, iterations=int(result.nit),
        final_residual=final, records=records,
    )
    logger.info(
        "Search on %s: %s after %d iterations (residual %.3e)",
        a.name or "algebra", status, trace.iterations, final,
    )
    return _finish(a, p, best, trace, tol)


def _finish(a, p, x, trace, tol) -> SearchResult:
    metric = p.metric(x)
    result = SearchResult(params=x, metric=metric, trace=trace)
    if trace.status == "converged":
        s = HermitianStructure.from_input(a, metric, tol=tol)
        # the search residual is squared and scale-free
        report_tol = max(tol, 100.0 * float(np.sqrt(trace.final_residual)))
        if report_tol > tol:
            logger.warning(
                "Witness on %s is accurate to %.1e only; report graded at tol %.1e instead of %.1e",
                a.name or "algebra", np.sqrt(trace.final_residual), report_tol, tol,
            )
        trace = trace.model_copy(update={"report_tolerance": report_tol})
        result.trace = trace
        report = theorem_suite(s, HarnessConfig(tol=report_tol))
        result.report = report.model_copy(update={"trace": trace})
    return result


def run_searches(
    a: FrameAlgebra,
    seeds: Iterable[int],
    options: Optional[SearchOptions] = None,
    workers: int = 1,
    tol: float = DEFAULT_TOLERANCE,
) -> List[SearchResult]:
    """
    Independent searches from perturbed identity metrics, one per seed.
    :return: Results ordered by seed.
    """
    options = options or SearchOptions()
    p = MetricParameterization(a.n)
    seeds = sorted(seeds)

    def one(seed: int) -> SearchResult:
        opts = options.model_copy(update={"seed": seed})
        return minimize(a, p.perturbed(seed, options.perturbation), opts, tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, seeds))
    return [one(seed) for seed in seeds]
