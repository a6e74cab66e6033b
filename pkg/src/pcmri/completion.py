"""Optimal completion of incomplete matrices by eigenvalue minimization.

The missing comparisons are treated as positive variables; the dominant
eigenvalue of the completed matrix is convex in the logarithms of those
variables, so cyclic coordinate descent with an exact one-dimensional
search finds the global minimum whenever the comparison graph is
connected (the condition for a unique optimum).

Variables are either box-bounded to the judgment scale ([1/9, 9]) or
unconstrained positives; the unconstrained search widens its bracket on
demand instead of using a fixed box.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import DisconnectedGraphError, IncompletePCM, is_connected, representing_graph
from .engine import UNCONSTRAINED_CAP, batched_lambda
from .spectral import ConvergenceError, _power_iteration

__all__ = [
    "CompletionMethod",
    "CompletionResult",
    "minimize_lambda_max",
    "brute_force_lambda",
]

SAATY_LOWER = 1.0 / 9.0
SAATY_UPPER = 9.0

# Golden-section tolerance on log-variables; well below any quantity the
# tables depend on.
GS_TOL = 1e-12
DEFAULT_SWEEP_TOL = 1e-10
MAX_SWEEPS = 500
_EIG_TOL = 1e-13
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class CompletionMethod(enum.Enum):
    """Variable regime for the missing entries.

    UNCONSTRAINED lets the variables take any positive value; SAATY_BOUNDED
    keeps them inside the judgment scale's hull [1/9, 9].
    """

    UNCONSTRAINED = "method1"
    SAATY_BOUNDED = "method2"

    @property
    def bounded(self) -> bool:
        return self is CompletionMethod.SAATY_BOUNDED

    @property
    def lower(self) -> float | None:
        return SAATY_LOWER if self.bounded else None

    @property
    def upper(self) -> float | None:
        return SAATY_UPPER if self.bounded else None


@dataclass(frozen=True)
class CompletionResult:
    """Optimal completion of one incomplete matrix.

    ``x_star`` lists the optimal values of the missing upper-triangle
    entries in row-major pair order; ``completed`` agrees with the input
    on every known entry and is reciprocal throughout.
    """

    completed: np.ndarray
    lambda_star: float
    x_star: np.ndarray
    sweeps: int
    converged: bool


def _golden_section(f, lo: float, hi: float, tol: float = GS_TOL):
    """Minimize a unimodal f on [lo, hi]; returns (t_min, f(t_min))."""
    a, b = lo, hi
    h = b - a
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INVPHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    t = 0.5 * (a + b)
    return t, f(t)


def minimize_lambda_max(
    pcm: IncompletePCM,
    method: CompletionMethod = CompletionMethod.SAATY_BOUNDED,
    tol: float = DEFAULT_SWEEP_TOL,
) -> CompletionResult:
    """Minimize the dominant eigenvalue over the missing entries.

    Requires a connected comparison graph (raises
    :class:`DisconnectedGraphError` otherwise).  A complete input reduces
    to a single eigenvalue computation.  Deterministic for fixed inputs;
    raises :class:`ConvergenceError` if the sweep budget runs out, which
    does not happen for connected instances at sane tolerances.
    """
    graph = representing_graph(pcm)
    if not is_connected(graph):
        raise DisconnectedGraphError(
            "no unique completion: the comparison graph is disconnected"
        )
    n = pcm.n
    pairs = pcm.missing_pairs()
    m = len(pairs)
    work = np.where(np.isnan(pcm.entries), 1.0, pcm.entries)
    if m == 0:
        lam, _, _, _ = _power_iteration(work, _EIG_TOL, 100_000)
        return CompletionResult(work, float(lam), np.empty(0), 0, True)

    t = np.zeros(m)
    state = {"v": None}

    def lam_at(mat) -> float:
        lam, vec, _, _ = _power_iteration(mat, _EIG_TOL, 100_000, v0=state["v"])
        state["v"] = vec
        return float(lam)

    def coordinate_min(k: int) -> float:
        i, j = pairs[k]

        def f(tk: float) -> float:
            work[i, j] = math.exp(tk)
            work[j, i] = math.exp(-tk)
            return lam_at(work)

        if method.bounded:
            t_best, f_best = _golden_section(f, math.log(SAATY_LOWER), math.log(SAATY_UPPER))
        else:
            lo, hi = math.log(SAATY_LOWER), math.log(SAATY_UPPER)
            cap = math.log(UNCONSTRAINED_CAP)
            while True:
                t_best, f_best = _golden_section(f, lo, hi)
                edge = 1e-6 * (hi - lo)
                if t_best - lo < edge and lo > -cap:
                    lo = max(2.0 * lo, -cap)
                elif hi - t_best < edge and hi < cap:
                    hi = min(2.0 * hi, cap)
                else:
                    break
        work[i, j] = math.exp(t_best)
        work[j, i] = math.exp(-t_best)
        t[k] = t_best
        return f_best

    lam_prev = lam_at(work)
    sweeps = 0
    for sweeps in range(1, MAX_SWEEPS + 1):
        lam_sweep = lam_prev
        for k in range(m):
            lam_sweep = coordinate_min(k)
        if lam_prev - lam_sweep < tol:
            lam_prev = lam_sweep
            break
        lam_prev = lam_sweep
    else:
        raise ConvergenceError(f"completion did not converge in {MAX_SWEEPS} sweeps")

    return CompletionResult(
        completed=work,
        lambda_star=float(lam_prev),
        x_star=np.exp(t),
        sweeps=sweeps,
        converged=True,
    )


def brute_force_lambda(
    pcm: IncompletePCM,
    method: CompletionMethod = CompletionMethod.SAATY_BOUNDED,
    grid_points: int = 101,
) -> float:
    """Minimum dominant eigenvalue over a log-uniform grid of completions.

    Independent check for :func:`minimize_lambda_max`: the value is an
    upper bound on the true optimum and converges to it as ``grid_points``
    grows.  Cost is grid_points**m eigenvalue solves, so m is capped at 3.
    Unconstrained variables use a wide surrogate box [1e-4, 1e4].
    """
    pairs = pcm.missing_pairs()
    m = len(pairs)
    if m > 3:
        raise ValueError(f"grid search supports at most 3 missing pairs, got {m}")
    if grid_points < 2:
        raise ValueError("need at least 2 grid points per axis")
    base = np.where(np.isnan(pcm.entries), 1.0, pcm.entries)
    if m == 0:
        lam, _, _, _ = _power_iteration(base, _EIG_TOL, 100_000)
        return float(lam)
    if method.bounded:
        lo, hi = math.log(SAATY_LOWER), math.log(SAATY_UPPER)
    else:
        lo, hi = math.log(1e-4), math.log(1e4)
    axis = np.linspace(lo, hi, grid_points)
    grids = np.meshgrid(*[axis] * m, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)

    best = np.inf
    chunk = max(1, 200_000 // (pcm.n * pcm.n))
    for s in range(0, points.shape[0], chunk):
        ts = points[s : s + chunk]
        mats = np.broadcast_to(base, (ts.shape[0],) + base.shape).copy()
        for k, (i, j) in enumerate(pairs):
            mats[:, i, j] = np.exp(ts[:, k])
            mats[:, j, i] = np.exp(-ts[:, k])
        lam, _ = batched_lambda(mats, tol=1e-12)
        best = min(best, float(lam.min()))
    return best
