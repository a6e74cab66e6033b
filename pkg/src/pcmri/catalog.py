"""Connected comparison-graph catalogs, one entry per isomorphism class.

A class is identified by its canonical code: the row-major upper-triangle
bit-string of the lexicographically smallest adjacency matrix over all
vertex relabelings.  The graphs of interest are complete graphs minus a
few edges, so deduplication runs on the sparse complement (restricted to
its non-isolated vertices) and the full-size canonical code is computed
once per class.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import ComparisonGraph, PcmError, is_connected
from .spectral import spectral_radius

__all__ = [
    "GraphClass",
    "UnsupportedSizeError",
    "canonical_form",
    "code_to_hex",
    "hex_to_code",
    "graph_from_code",
    "enumerate_missing_edge_graphs",
    "occurrence_probability",
    "independent_pair_probability",
]

MAX_VERTICES = 10
# itertools.combinations budget for one enumeration call.
MAX_SUBSETS = 2_000_000

_PERM_CACHE: dict[int, np.ndarray] = {}


class UnsupportedSizeError(PcmError):
    """Parameters outside the exhaustive-enumeration range."""


def _permutation_table(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = np.array(
            list(itertools.permutations(range(n))), dtype=np.int8
        )
    return _PERM_CACHE[n]


def _min_code_bits(adjacency: np.ndarray) -> np.ndarray:
    """Upper-triangle bits of the lexicographically minimal relabeling."""
    n = adjacency.shape[0]
    if n < 2:
        return np.zeros(0, dtype=np.uint8)
    iu, ju = np.triu_indices(n, k=1)
    perms = _permutation_table(n)
    best_packed = None
    best_bits = None
    # n=10 means 3.6M permutations; chunking bounds the fancy-index scratch.
    chunk = 400_000
    for s in range(0, perms.shape[0], chunk):
        sub = perms[s : s + chunk]
        bits = adjacency[sub[:, iu], sub[:, ju]].astype(np.uint8)
        packed = np.packbits(bits, axis=1)
        order = np.lexsort(packed.T[::-1])
        top = order[0]
        if best_packed is None or packed[top].tobytes() < best_packed:
            best_packed = packed[top].tobytes()
            best_bits = bits[top]
    return best_bits


def canonical_form(graph: ComparisonGraph) -> str:
    """Canonical code of a graph: isomorphic inputs map to equal strings.

    Brute force over all n! relabelings, so n is capped at 10.
    """
    if graph.n > MAX_VERTICES:
        raise UnsupportedSizeError(f"canonical form needs n <= {MAX_VERTICES}, got {graph.n}")
    bits = _min_code_bits(np.asarray(graph.adjacency))
    return "".join("1" if b else "0" for b in bits)


def code_to_hex(code: str) -> str:
    """Pack a canonical bit-string MSB-first into lowercase hex."""
    bits = np.array([1 if c == "1" else 0 for c in code], dtype=np.uint8)
    return np.packbits(bits).tobytes().hex()


def hex_to_code(hex_code: str, n: int) -> str:
    """Inverse of :func:`code_to_hex` for an n-vertex graph."""
    e = n * (n - 1) // 2
    raw = np.frombuffer(bytes.fromhex(hex_code), dtype=np.uint8)
    bits = np.unpackbits(raw)[:e]
    if len(bits) < e:
        raise ValueError(f"hex code too short for n={n}")
    return "".join("1" if b else "0" for b in bits)


def graph_from_code(n: int, code: str) -> ComparisonGraph:
    """Rebuild the representative adjacency from a canonical code."""
    e = n * (n - 1) // 2
    if len(code) != e:
        raise ValueError(f"code length {len(code)} does not match n={n}")
    adj = np.zeros((n, n), dtype=np.uint8)
    iu, ju = np.triu_indices(n, k=1)
    bits = np.array([c == "1" for c in code])
    adj[iu[bits], ju[bits]] = 1
    adj[ju[bits], iu[bits]] = 1
    return ComparisonGraph(n, adj)


@dataclass(frozen=True)
class GraphClass:
    """One isomorphism class of connected graphs with ``m`` missing edges.

    ``graph_id`` is the 1-based position in canonical-code order within
    the (n, m) family.
    """

    n: int
    m: int
    canonical_code: str
    degree_sequence: tuple[int, ...]
    spectral_radius: float
    graph_id: int

    def representative(self) -> ComparisonGraph:
        return graph_from_code(self.n, self.canonical_code)

    def known_pairs(self) -> tuple[tuple[int, int], ...]:
        return self.representative().edge_list

    def missing_pairs(self) -> tuple[tuple[int, int], ...]:
        return self.representative().complement_edges()

    @property
    def code_hex(self) -> str:
        return code_to_hex(self.canonical_code)


def _edge_slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _connected_after_removal(n: int, removed: set[tuple[int, int]]) -> bool:
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for w in range(n):
            if w != v and not seen[w]:
                edge = (v, w) if v < w else (w, v)
                if edge not in removed:
                    seen[w] = True
                    stack.append(w)
    return all(seen)


def _complement_key(n: int, missing: tuple[tuple[int, int], ...]) -> tuple:
    """Exact isomorphism key via the complement's non-isolated part."""
    verts = sorted({v for e in missing for v in e})
    relabel = {v: k for k, v in enumerate(verts)}
    size = len(verts)
    adj = np.zeros((size, size), dtype=np.uint8)
    for i, j in missing:
        a, b = relabel[i], relabel[j]
        adj[a, b] = adj[b, a] = 1
    return size, _min_code_bits(adj).tobytes()


def enumerate_missing_edge_graphs(n: int, m: int) -> list[GraphClass]:
    """All connected-graph classes on n vertices with m edges removed.

    Classes come back sorted by canonical code with 1-based ``graph_id``.
    Returns an empty list when m exceeds the spanning-tree bound (no
    connected graph has that few edges).
    """
    if not (2 <= n <= MAX_VERTICES):
        raise UnsupportedSizeError(f"need 2 <= n <= {MAX_VERTICES}, got n={n}")
    if m < 0:
        raise UnsupportedSizeError(f"missing-edge count must be nonnegative, got {m}")
    slots = _edge_slots(n)
    if m > len(slots):
        return []
    if math.comb(len(slots), m) > MAX_SUBSETS:
        raise UnsupportedSizeError(
            f"enumeration of C({len(slots)}, {m}) edge subsets is out of range"
        )
    seen: dict[tuple, tuple[tuple[int, int], ...]] = {}
    for combo in itertools.combinations(slots, m):
        removed = set(combo)
        if not _connected_after_removal(n, removed):
            continue
        key = _complement_key(n, combo)
        if key not in seen:
            seen[key] = combo

    classes = []
    for combo in seen.values():
        graph = ComparisonGraph.from_edges(n, [e for e in slots if e not in set(combo)])
        code = canonical_form(graph)
        rep = graph_from_code(n, code)
        classes.append(
            (code, rep.degree_sequence(), spectral_radius(rep))
        )
    classes.sort(key=lambda c: c[0])
    return [
        GraphClass(n=n, m=m, canonical_code=code, degree_sequence=deg,
                   spectral_radius=rho, graph_id=k + 1)
        for k, (code, deg, rho) in enumerate(classes)
    ]


def independent_pair_probability(n: int) -> float:
    """Probability that two randomly placed missing edges share no vertex."""
    return 1.0 - (4.0 * n - 8.0) / (n * (n - 1.0) - 2.0)


def occurrence_probability(
    n: int,
    m: int,
    cls: GraphClass,
    samples: int = 1_000_000,
    seed: int = 42,
) -> float:
    """Probability of a graph class among random connected missing patterns.

    m <= 1 has a single class (probability 1); m == 2 uses the closed-form
    vertex-sharing split; larger m is estimated by Monte Carlo over uniform
    m-subsets of the edge slots, conditioned on the known graph staying
    connected.  Deterministic for a fixed seed.
    """
    classes = enumerate_missing_edge_graphs(n, m)
    codes = {c.canonical_code: k for k, c in enumerate(classes)}
    if cls.canonical_code not in codes or cls.n != n or cls.m != m:
        raise ValueError("class does not belong to the (n, m) family")
    if m <= 1:
        return 1.0
    if m == 2:
        p_indep = independent_pair_probability(n)
        # The independent-pair class is the one whose complement has no
        # vertex of degree 2.
        missing = cls.missing_pairs()
        shared = len({v for e in missing for v in e}) < 4
        return 1.0 - p_indep if shared else p_indep
    counts = _class_counts_montecarlo(n, m, classes, samples, seed)
    total = counts.sum()
    if total == 0:
        raise RuntimeError("no connected draws; unsupported parameter range")
    return float(counts[codes[cls.canonical_code]] / total)


def class_probabilities(
    n: int, m: int, classes: list[GraphClass], samples: int = 1_000_000, seed: int = 42
) -> np.ndarray:
    """Occurrence probabilities for a whole (n, m) family at once."""
    if m <= 1:
        return np.ones(len(classes))
    if m == 2:
        p_indep = independent_pair_probability(n)
        out = np.empty(len(classes))
        for k, c in enumerate(classes):
            shared = len({v for e in c.missing_pairs() for v in e}) < 4
            out[k] = 1.0 - p_indep if shared else p_indep
        return out
    counts = _class_counts_montecarlo(n, m, classes, samples, seed)
    return counts / counts.sum()


def _class_counts_montecarlo(n, m, classes, samples, seed) -> np.ndarray:
    slots = _edge_slots(n)
    nslots = len(slots)
    key_to_idx = {}
    for k, c in enumerate(classes):
        key_to_idx[_complement_key(n, c.missing_pairs())] = k

    if nslots <= 21:
        # Bitmask lookup table over all subsets of this size.
        table = np.full(1 << nslots, -1, dtype=np.int16)
        for combo in itertools.combinations(range(nslots), m):
            removed = {slots[k] for k in combo}
            if not _connected_after_removal(n, removed):
                continue
            key = _complement_key(n, tuple(sorted(removed)))
            mask = 0
            for k in combo:
                mask |= 1 << k
            table[mask] = key_to_idx[key]
        rng = np.random.Generator(np.random.Philox(key=seed))
        counts = np.zeros(len(classes), dtype=np.int64)
        chunk = 200_000
        left = samples
        while left > 0:
            bsz = min(chunk, left)
            left -= bsz
            scores = rng.random((bsz, nslots))
            picks = np.argpartition(scores, m - 1, axis=1)[:, :m]
            masks = (1 << picks.astype(np.int64)).sum(axis=1)
            hits = table[masks]
            valid = hits >= 0
            counts += np.bincount(hits[valid], minlength=len(classes))
        return counts

    # Large vertex counts: plain loop, classification via complement key.
    rng = np.random.Generator(np.random.Philox(key=seed))
    counts = np.zeros(len(classes), dtype=np.int64)
    for _ in range(samples):
        picks = rng.choice(nslots, size=m, replace=False)
        removed = tuple(sorted(slots[k] for k in picks))
        if not _connected_after_removal(n, set(removed)):
            continue
        key = _complement_key(n, removed)
        idx = key_to_idx.get(key)
        if idx is not None:
            counts[idx] += 1
    return counts


def find_class(n: int, m: int, code: str) -> GraphClass:
    """Look up a class by canonical code within its (n, m) family."""
    for cls in enumerate_missing_edge_graphs(n, m):
        if cls.canonical_code == code:
            return cls
    raise KeyError(f"no class with code {code!r} for n={n}, m={m}")


def classify(graph: ComparisonGraph) -> GraphClass:
    """Catalog entry matching a concrete connected comparison graph."""
    if not is_connected(graph):
        raise ValueError("only connected graphs are cataloged")
    return find_class(graph.n, graph.missing_count, canonical_form(graph))
