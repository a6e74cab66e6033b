"""Incomplete pairwise comparison matrices and their comparison graphs.

An incomplete pairwise comparison matrix (PCM) is a positive reciprocal
matrix in which some symmetric pairs of off-diagonal entries are unknown.
Unknown entries are stored as NaN; every known entry ``a[i, j]`` is mirrored
by ``a[j, i] = 1 / a[i, j]``.  The known comparisons induce an undirected
graph on the alternatives, which drives everything downstream (completion,
thresholds, monitoring).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "SAATY_SCALE",
    "MISSING",
    "PcmError",
    "MatrixFormatError",
    "DisconnectedGraphError",
    "IncompletePCM",
    "ComparisonGraph",
    "new_incomplete_pcm",
    "representing_graph",
    "is_connected",
    "parse_matrix_text",
    "format_matrix_text",
]

# The 17-value judgment scale: reciprocals of 9..2, then 1..9.  Built from
# exact integer ratios so each 1/k is the closest double to the rational.
SAATY_SCALE: tuple[float, ...] = tuple(
    float(Fraction(1, k)) for k in range(9, 1, -1)
) + tuple(float(k) for k in range(1, 10))

# Sentinel for an unknown comparison.  NaN-based so numpy slicing works.
MISSING = float("nan")

# Reciprocity must hold to this relative tolerance in user-supplied matrices.
RECIPROCITY_RTOL = 1e-12


class PcmError(ValueError):
    """Base class for matrix construction and validation errors."""


class MatrixFormatError(PcmError):
    """Raised when a matrix text file cannot be parsed or validated."""


class DisconnectedGraphError(PcmError):
    """Raised when an operation requires a connected comparison graph."""


def _is_missing(x) -> bool:
    return isinstance(x, float) and np.isnan(x)


class IncompletePCM:
    """Immutable n-by-n reciprocal matrix with possibly missing entries.

    Construct via :func:`new_incomplete_pcm` (upper-triangle input) or
    :meth:`from_array` (full matrix, validated).  ``set_comparison`` and
    ``clear_comparison`` return new instances; the object itself never
    mutates, so it is safe to share across threads.
    """

    __slots__ = ("_n", "_entries")

    def __init__(self, entries: np.ndarray):
        entries = np.asarray(entries, dtype=float)
        _validate_entries(entries)
        self._entries = entries
        self._entries.setflags(write=False)
        self._n = entries.shape[0]

    @property
    def n(self) -> int:
        return self._n

    @property
    def entries(self) -> np.ndarray:
        """Read-only n-by-n array; missing entries are NaN."""
        return self._entries

    @classmethod
    def from_array(cls, matrix) -> "IncompletePCM":
        return cls(np.array(matrix, dtype=float))

    def __getitem__(self, ij: tuple[int, int]) -> float:
        return float(self._entries[ij])

    def is_known(self, i: int, j: int) -> bool:
        return not np.isnan(self._entries[i, j])

    @property
    def missing_count(self) -> int:
        """Number m of missing comparisons above the diagonal."""
        iu = np.triu_indices(self._n, k=1)
        return int(np.isnan(self._entries[iu]).sum())

    def missing_pairs(self) -> list[tuple[int, int]]:
        """Missing upper-triangle pairs (i < j) in row-major order."""
        return [
            (i, j)
            for i in range(self._n)
            for j in range(i + 1, self._n)
            if np.isnan(self._entries[i, j])
        ]

    def known_pairs(self) -> list[tuple[int, int]]:
        """Known upper-triangle pairs (i < j) in row-major order."""
        return [
            (i, j)
            for i in range(self._n)
            for j in range(i + 1, self._n)
            if not np.isnan(self._entries[i, j])
        ]

    def set_comparison(self, i: int, j: int, value: float) -> "IncompletePCM":
        """Return a copy with a[i, j] = value and a[j, i] = 1/value."""
        _check_offdiag_index(self._n, i, j)
        if not (value > 0) or not np.isfinite(value):
            raise PcmError(f"comparison value must be positive, got {value!r}")
        out = np.array(self._entries)
        out[i, j] = value
        out[j, i] = 1.0 / value
        return IncompletePCM(out)

    def clear_comparison(self, i: int, j: int) -> "IncompletePCM":
        """Return a copy with the (i, j) comparison marked missing."""
        _check_offdiag_index(self._n, i, j)
        if np.isnan(self._entries[i, j]):
            raise PcmError(f"comparison ({i}, {j}) is already missing")
        out = np.array(self._entries)
        out[i, j] = np.nan
        out[j, i] = np.nan
        return IncompletePCM(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncompletePCM):
            return NotImplemented
        if self._n != other._n:
            return False
        a, b = self._entries, other._entries
        both_nan = np.isnan(a) & np.isnan(b)
        return bool(np.all(both_nan | (a == b)))

    def __repr__(self) -> str:
        return f"IncompletePCM(n={self._n}, m={self.missing_count})"


def _check_offdiag_index(n: int, i: int, j: int) -> None:
    if not (0 <= i < n and 0 <= j < n):
        raise PcmError(f"index ({i}, {j}) out of range for n={n}")
    if i == j:
        raise PcmError("diagonal comparisons are fixed at 1 and cannot be set")


def _validate_entries(entries: np.ndarray) -> None:
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise PcmError(f"matrix must be square, got shape {entries.shape}")
    n = entries.shape[0]
    if n < 2:
        raise PcmError(f"need at least 2 alternatives, got n={n}")
    if not np.all(np.diagonal(entries) == 1.0):
        raise PcmError("diagonal entries must all equal 1")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = entries[i, j], entries[j, i]
            if np.isnan(a) != np.isnan(b):
                raise PcmError(
                    f"entries ({i},{j}) and ({j},{i}) must be both known or both missing"
                )
            if np.isnan(a):
                continue
            if not (a > 0 and b > 0) or not (np.isfinite(a) and np.isfinite(b)):
                raise PcmError(f"entry ({i},{j}) must be positive and finite, got {a!r}")
            if abs(b - 1.0 / a) > RECIPROCITY_RTOL * abs(b):
                raise PcmError(
                    f"reciprocity violated at ({i},{j}): {a!r} vs {b!r}"
                )


def new_incomplete_pcm(n: int, upper_entries) -> IncompletePCM:
    """Build an incomplete PCM from upper-triangle comparisons.

    Parameters
    ----------
    n : number of alternatives (>= 2).
    upper_entries : iterable of (i, j, value) with 0 <= i < j < n.  Pairs not
        listed stay missing; a NaN value also marks the pair missing.

    The diagonal is set to 1 and reciprocal slots are filled automatically.
    Raises :class:`PcmError` on duplicate pairs, bad indices or non-positive
    values.
    """
    if n < 2:
        raise PcmError(f"need at least 2 alternatives, got n={n}")
    entries = np.full((n, n), np.nan)
    np.fill_diagonal(entries, 1.0)
    seen = set()
    for i, j, value in upper_entries:
        if not (0 <= i < j < n):
            raise PcmError(f"expected 0 <= i < j < n={n}, got ({i}, {j})")
        if (i, j) in seen:
            raise PcmError(f"duplicate comparison for pair ({i}, {j})")
        seen.add((i, j))
        if _is_missing(value):
            continue
        if not (value > 0) or not np.isfinite(value):
            raise PcmError(f"comparison value must be positive, got {value!r}")
        entries[i, j] = value
        entries[j, i] = 1.0 / value
    return IncompletePCM(entries)


@dataclass(frozen=True)
class ComparisonGraph:
    """Undirected graph of known comparisons.

    ``adjacency`` is a symmetric 0/1 matrix with zero diagonal; vertex
    labels are 0-based internally (rendering elsewhere is 1-based).
    """

    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=np.uint8)
        if adj.shape != (self.n, self.n):
            raise PcmError(f"adjacency shape {adj.shape} does not match n={self.n}")
        if np.any(np.diagonal(adj) != 0):
            raise PcmError("adjacency diagonal must be zero")
        if not np.array_equal(adj, adj.T):
            raise PcmError("adjacency must be symmetric")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, edges) -> "ComparisonGraph":
        adj = np.zeros((n, n), dtype=np.uint8)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise PcmError(f"bad edge ({i}, {j}) for n={n}")
            adj[i, j] = adj[j, i] = 1
        return cls(n, adj)

    @property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted (i, j) pairs with i < j, row-major order."""
        iu, ju = np.triu_indices(self.n, k=1)
        mask = self.adjacency[iu, ju] == 1
        return tuple(zip(iu[mask].tolist(), ju[mask].tolist()))

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    @property
    def missing_count(self) -> int:
        """Missing edges relative to the complete graph."""
        return self.n * (self.n - 1) // 2 - self.edge_count

    def degree_sequence(self) -> tuple[int, ...]:
        """Vertex degrees sorted non-increasing."""
        return tuple(sorted((int(d) for d in self.adjacency.sum(axis=1)), reverse=True))

    def complement_edges(self) -> tuple[tuple[int, int], ...]:
        """Missing upper-triangle pairs, row-major order."""
        iu, ju = np.triu_indices(self.n, k=1)
        mask = self.adjacency[iu, ju] == 0
        return tuple(zip(iu[mask].tolist(), ju[mask].tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComparisonGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.n, self.adjacency.tobytes()))


def representing_graph(pcm: IncompletePCM) -> ComparisonGraph:
    """Graph with an edge (i, j) exactly where the comparison is known."""
    adj = (~np.isnan(pcm.entries)).astype(np.uint8)
    np.fill_diagonal(adj, 0)
    return ComparisonGraph(pcm.n, adj)


def is_connected(graph: ComparisonGraph) -> bool:
    """True iff every vertex is reachable from vertex 0.

    An edgeless graph on n >= 2 vertices is disconnected.
    """
    n = graph.n
    if n <= 1:
        return True
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    adj = graph.adjacency
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(adj[v]):
            if not seen[w]:
                seen[w] = True
                stack.append(int(w))
    return bool(seen.all())


def parse_matrix_text(text: str) -> IncompletePCM:
    """Parse the CLI matrix format.

    First non-blank line holds n; each of the next n lines holds n
    whitespace-separated tokens.  ``*`` marks a missing entry; other tokens
    are decimal numbers or fractions ``p/q``.  Reciprocity and the unit
    diagonal are validated, not repaired.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise MatrixFormatError(f"first line must be the matrix size, got {lines[0]!r}")
    if n < 2:
        raise MatrixFormatError(f"matrix size must be at least 2, got {n}")
    if len(lines) != n + 1:
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    entries = np.empty((n, n))
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != n:
            raise MatrixFormatError(f"row {i + 1} has {len(tokens)} entries, expected {n}")
        for j, tok in enumerate(tokens):
            entries[i, j] = _parse_token(tok)
    try:
        return IncompletePCM(entries)
    except PcmError as exc:
        raise MatrixFormatError(str(exc)) from exc


def _parse_token(tok: str) -> float:
    if tok == "*":
        return np.nan
    try:
        if "/" in tok:
            num, den = tok.split("/", 1)
            return float(Fraction(int(num), int(den)))
        return float(tok)
    except (ValueError, ZeroDivisionError):
        raise MatrixFormatError(f"cannot parse matrix entry {tok!r}")


def format_matrix_text(pcm: IncompletePCM) -> str:
    """Inverse of :func:`parse_matrix_text` (decimal rendering)."""
    rows = [str(pcm.n)]
    for i in range(pcm.n):
        toks = []
        for j in range(pcm.n):
            v = pcm.entries[i, j]
            toks.append("*" if np.isnan(v) else f"{v:.12g}")
        rows.append(" ".join(toks))
    return "\n".join(rows) + "\n"
