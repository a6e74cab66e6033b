"""Independent reference implementations used only by the tests.

None of this code shares a path with the package: eigenvalues come from
closed-form root finding or LAPACK, connectivity from a hand-rolled BFS,
and optimization from recursive grid refinement.
"""

import collections
import math

import numpy as np


def bfs_connected(adjacency) -> bool:
    """Breadth-first reachability from vertex 0."""
    adjacency = np.asarray(adjacency)
    n = adjacency.shape[0]
    seen = {0}
    queue = collections.deque([0])
    while queue:
        v = queue.popleft()
        for w in range(n):
            if adjacency[v, w] and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def cubic_roots(a2, a1, a0):
    """Complex roots of z^3 + a2 z^2 + a1 z + a0 (Cardano)."""
    a2, a1, a0 = complex(a2), complex(a1), complex(a0)
    p = a1 - a2 * a2 / 3.0
    q = a0 - a2 * a1 / 3.0 + 2.0 * a2**3 / 27.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    s = np.sqrt(complex(disc))
    u3 = -q / 2.0 + s
    if abs(u3) < 1e-30:
        u3 = -q / 2.0 - s
    if abs(u3) < 1e-30:
        t0 = 0j
        return [t0 - a2 / 3.0] * 3
    u = u3 ** (1.0 / 3.0)
    w = complex(-0.5, math.sqrt(3.0) / 2.0)
    roots = []
    for k in range(3):
        uk = u * w**k
        tk = uk - p / (3.0 * uk)
        roots.append(tk - a2 / 3.0)
    return roots


def quartic_roots(b, c, d, e):
    """Complex roots of x^4 + b x^3 + c x^2 + d x + e (Ferrari).

    Factors the depressed quartic into two quadratics whose shared
    parameter solves a resolvent cubic.
    """
    b, c, d, e = float(b), float(c), float(d), float(e)
    p = c - 3.0 * b * b / 8.0
    q = d - b * c / 2.0 + b**3 / 8.0
    r = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b**4 / 256.0
    shift = b / 4.0
    if abs(q) < 1e-12:
        # biquadratic: y^4 + p y^2 + r
        disc = np.sqrt(complex(p * p - 4.0 * r))
        roots = []
        for sign in (1.0, -1.0):
            y2 = (-p + sign * disc) / 2.0
            y = np.sqrt(complex(y2))
            roots.extend([y - shift, -y - shift])
        return roots
    # A = a^2 solves A^3 + 2p A^2 + (p^2 - 4r) A - q^2 = 0
    candidates = cubic_roots(2.0 * p, p * p - 4.0 * r, -q * q)
    big_a = max(candidates, key=abs)
    a = np.sqrt(big_a)
    bb = (p + big_a - q / a) / 2.0
    cc = (p + big_a + q / a) / 2.0
    roots = []
    for alpha, beta in ((a, bb), (-a, cc)):
        disc = np.sqrt(alpha * alpha - 4.0 * beta)
        roots.append((-alpha + disc) / 2.0 - shift)
        roots.append((-alpha - disc) / 2.0 - shift)
    return roots


def charpoly_coeffs(matrix):
    """Monic characteristic polynomial coefficients (Faddeev-LeVerrier)."""
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    c = 1.0
    for k in range(1, n + 1):
        m = a @ m + c * a
        c = -np.trace(m) / k
        coeffs.append(c)
    return coeffs


def lambda_max_quartic(matrix) -> float:
    """Largest real eigenvalue of a 4x4 matrix via the closed-form quartic."""
    _, c3, c2, c1, c0 = charpoly_coeffs(matrix)
    roots = quartic_roots(c3, c2, c1, c0)
    real = [z.real for z in roots if abs(z.imag) <= 1e-7 * max(1.0, abs(z))]
    return max(real)


def lambda_max_lapack(matrix) -> float:
    """Largest-real-part eigenvalue via LAPACK, for any size."""
    return float(np.linalg.eigvals(matrix).real.max())


def grid_refined_minimum(base, pairs, lo, hi, points=15, levels=12):
    """Global minimum of lambda_max over missing entries by log-grid zoom.

    Starts from a full grid on [lo, hi]^m (log-space), then re-grids around
    the best point with a shrinking window, clipped to the box.  Eigenvalues
    come from LAPACK, so the whole path is independent of the package.
    """
    base = np.asarray(base, dtype=float)
    m = len(pairs)
    if m == 0:
        return lambda_max_lapack(base)
    centers = np.full(m, (lo + hi) / 2.0)
    half = (hi - lo) / 2.0
    best_val = np.inf
    for _ in range(levels):
        axes = [
            np.linspace(max(lo, c - half), min(hi, c + half), points)
            for c in centers
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([g.ravel() for g in mesh], axis=1)
        mats = np.broadcast_to(base, (pts.shape[0],) + base.shape).copy()
        for k, (i, j) in enumerate(pairs):
            mats[:, i, j] = np.exp(pts[:, k])
            mats[:, j, i] = np.exp(-pts[:, k])
        lams = np.linalg.eigvals(mats).real.max(axis=1)
        kbest = int(np.argmin(lams))
        best_val = float(lams[kbest])
        centers = pts[kbest]
        # window shrinks to just past one grid cell on each side
        half = 2.2 * half / (points - 1)
    return best_val


def spectral_radius_lapack(adjacency) -> float:
    """Graph spectral radius via the symmetric LAPACK solver."""
    vals = np.linalg.eigvalsh(np.asarray(adjacency, dtype=float))
    return float(np.max(np.abs(vals)))
