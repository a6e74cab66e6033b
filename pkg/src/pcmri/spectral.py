"""Dominant eigenvalues, consistency indices and graph spectral radii.

Everything here rests on the Perron root of a positive matrix being simple
and strictly dominant, so plain power iteration converges geometrically and
no general eigensolver is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComparisonGraph

__all__ = [
    "EigenResult",
    "ConvergenceError",
    "dominant_eigenvalue",
    "consistency_index",
    "consistency_ratio",
    "is_acceptable",
    "spectral_radius",
    "CR_THRESHOLD",
]

# Saaty's 10% rule; the boundary itself counts as acceptable.
CR_THRESHOLD = 0.1

DEFAULT_TOL = 1e-11
DEFAULT_MAX_ITER = 100_000


class ConvergenceError(RuntimeError):
    """Power iteration failed to converge within the iteration budget."""


@dataclass(frozen=True)
class EigenResult:
    """Converged dominant-eigenvalue estimate.

    ``residual`` is the infinity norm of A v - lambda v with v normalized
    to unit 1-norm; it is at most the tolerance passed to the solver.
    """

    lambda_max: float
    iterations: int
    residual: float


def _power_iteration(matrix: np.ndarray, tol: float, max_iter: int, v0=None):
    """Power iteration with 1-normalized iterates on a positive matrix.

    Returns (lambda, eigenvector, iterations, residual).  Stops once both
    the successive-eigenvalue change and the residual drop below ``tol``.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if v0 is None:
        v = np.full(n, 1.0 / n)
    else:
        v = np.asarray(v0, dtype=float)
        v = v / v.sum()
    lam = 0.0
    for it in range(1, max_iter + 1):
        av = a @ v
        lam_new = av.sum()  # since sum(v) == 1, this is the 1-norm Rayleigh estimate
        v_new = av / lam_new
        if abs(lam_new - lam) <= tol:
            residual = float(np.max(np.abs(av - lam_new * v)))
            if residual <= tol:
                return float(lam_new), v_new, it, residual
        lam = lam_new
        v = v_new
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iter} iterations"
    )


def dominant_eigenvalue(
    matrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> EigenResult:
    """Perron root of a strictly positive square matrix.

    For an n-by-n positive reciprocal matrix the result is >= n up to
    floating error.  Raises :class:`ConvergenceError` if the tolerance is
    not reached within ``max_iter`` iterations (pathological tolerances;
    not expected for n <= 10).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.all(a > 0):
        raise ValueError("all entries must be strictly positive")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lam, _, iterations, residual = _power_iteration(a, tol, max_iter)
    return EigenResult(lambda_max=lam, iterations=iterations, residual=residual)


def consistency_index(lambda_max: float, n: int) -> float:
    """(lambda_max - n) / (n - 1), clamped to zero from tiny negatives.

    Floating error can push lambda_max a hair under n for consistent
    matrices; values above -1e-9 are clamped, anything lower is rejected.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    ci = (lambda_max - n) / (n - 1)
    if ci < 0:
        if ci < -1e-9:
            raise ValueError(
                f"lambda_max={lambda_max} below n={n}: not a reciprocal-matrix eigenvalue"
            )
        ci = 0.0
    return ci


def consistency_ratio(ci: float, ri: float) -> float:
    """CI divided by the random index RI."""
    if not ri > 0:
        raise ValueError(f"random index must be positive, got {ri}")
    if ci < 0:
        raise ValueError(f"consistency index must be nonnegative, got {ci}")
    return ci / ri


def is_acceptable(cr: float) -> bool:
    """Saaty's rule: inconsistency is tolerable iff CR <= 0.1."""
    return cr <= CR_THRESHOLD


def spectral_radius(graph: ComparisonGraph, tol: float = 1e-12, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest absolute adjacency eigenvalue of a comparison graph.

    Power iteration runs on B + I and the shift is subtracted afterwards:
    bipartite graphs (e.g. the 4-cycle) have eigenvalue pairs +/-r that
    defeat plain power iteration, while B + I has the simple dominant
    eigenvalue r + 1 on every connected component.
    """
    n = graph.n
    if n == 1:
        return 0.0
    b = graph.adjacency.astype(float)
    if b.sum() == 0:
        return 0.0
    shifted = b + np.eye(n)
    v = np.full(n, 1.0 / n)
    lam = 0.0
    for _ in range(max_iter):
        av = shifted @ v
        # Rayleigh quotient: shifted is symmetric, so this converges at the
        # squared rate of the iterate itself.
        lam_new = float(v @ av) / float(v @ v)
        v = av / av.sum()
        if abs(lam_new - lam) <= tol:
            return max(lam_new - 1.0, 0.0)
        lam = lam_new
    raise ConvergenceError(f"spectral radius iteration stalled at tol={tol}")
