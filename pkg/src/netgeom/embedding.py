"""Hop-distance coordinate embeddings and reference-set reduction.

Every node gets a coordinate vector of BFS distances to a set of reference
nodes; the Chebyshev (max-component) distance between two coordinate vectors
never exceeds the true hop distance, and with the full reference set it equals
it exactly. Reduction trims the reference set while keeping every pairwise
Chebyshev distance within a hop tolerance of the truth, via a set-cover pass:
essential references (only cover of some pair) first, then greedy selection.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .graph import Graph, _distances
from .stats import Histogram

__all__ = [
    "Embedding",
    "CoverMatrix",
    "ReductionResult",
    "DistortionReport",
    "embed_full",
    "chebyshev_distance",
    "chebyshev_matrix",
    "build_cover_matrix",
    "reduce_references",
    "embedding_distortion",
]

# cache the full pair/reference cover table only while it fits this many cells
_DENSE_CELL_BUDGET = 100_000_000


@dataclass(frozen=True)
class Embedding:
    """Coordinates ``coords[v, i]`` = hop distance from node v to references[i]."""

    references: tuple[int, ...]
    coords: np.ndarray
    full: bool

    def __post_init__(self):
        if len(self.references) == 0:
            raise ValueError("an embedding needs at least one reference")
        if self.coords.shape != (self.coords.shape[0], len(self.references)):
            raise ValueError("coords shape does not match references")

    @property
    def node_count(self) -> int:
        return int(self.coords.shape[0])

    def subset(self, references: Sequence[int]) -> "Embedding":
        """Embedding restricted to the given reference nodes (must be present)."""
        pos = {r: i for i, r in enumerate(self.references)}
        try:
            cols = [pos[r] for r in references]
        except KeyError as e:
            raise ValueError(f"reference {e.args[0]} not in embedding") from None
        refs = tuple(references)
        return Embedding(
            references=refs,
            coords=self.coords[:, cols].copy(),
            full=self.full and set(refs) == set(self.references),
        )


def embed_full(g: Graph) -> Embedding:
    """Full embedding of a connected graph: every node is a reference.

    coords is the complete hop-distance matrix. Raises ValueError if the graph
    is empty or disconnected.
    """
    n = g.node_count
    if n == 0:
        raise ValueError("cannot embed an empty graph")
    coords = np.empty((n, n), dtype=np.int32)
    for v in range(n):
        row = _distances(g, v)
        coords[v] = row
    if (coords < 0).any():
        raise ValueError("graph is disconnected; embed one component at a time")
    return Embedding(references=tuple(range(n)), coords=coords, full=True)


def chebyshev_distance(e: Embedding, p: int, q: int) -> int:
    """Max coordinate difference between nodes p and q (a hop-distance lower bound)."""
    n = e.node_count
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError(f"node out of range 0..{n - 1}")
    return int(np.max(np.abs(e.coords[p] - e.coords[q])))


def chebyshev_matrix(e: Embedding) -> np.ndarray:
    """All-pairs Chebyshev distances under the embedding's reference set."""
    n = e.node_count
    out = np.empty((n, n), dtype=e.coords.dtype)
    for v in range(n):
        np.abs(e.coords - e.coords[v]).max(axis=1, out=out[v])
    return out


@dataclass(frozen=True)
class CoverMatrix:
    """Implicit pair/reference cover table at a given hop tolerance.

    Row (p, q) is covered by reference column k when the coordinate difference
    |coords[p, k] - coords[q, k]| is at least max(0, d(p, q) - tolerance),
    i.e. when reference k alone pins the pair's distance to within the
    tolerance. Rows are generated on demand, never stored.
    """

    embedding: Embedding
    tolerance: int

    def __post_init__(self):
        if not self.embedding.full:
            raise ValueError("cover matrix needs the full embedding (true distances)")
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")

    @property
    def node_count(self) -> int:
        return self.embedding.node_count

    @property
    def pair_count(self) -> int:
        n = self.node_count
        return n * (n - 1) // 2

    def pairs(self) -> Iterator[tuple[int, int]]:
        n = self.node_count
        for p in range(n):
            for q in range(p + 1, n):
                yield (p, q)

    def row_mask(self, p: int, q: int) -> np.ndarray:
        """Boolean cover row for the pair (p, q), one entry per reference."""
        c = self.embedding.coords
        need = max(0, int(c[p, q]) - self.tolerance)
        return np.abs(c[p] - c[q]) >= need

    def covering_columns(self, p: int, q: int) -> tuple[int, ...]:
        """Reference nodes that cover the pair (p, q)."""
        mask = self.row_mask(p, q)
        return tuple(int(self.embedding.references[i]) for i in np.nonzero(mask)[0])

    def rows(self) -> Iterator[tuple[tuple[int, int], tuple[int, ...]]]:
        """Yield ((p, q), covering reference nodes) for every pair."""
        for p, q in self.pairs():
            yield (p, q), self.covering_columns(p, q)


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of reference reduction, with its verified distortion profile."""

    kept: tuple[int, ...]
    essential: tuple[int, ...]
    greedy: tuple[int, ...]
    tolerance: int
    max_distortion: int
    distortion_histogram: Histogram


def build_cover_matrix(e: Embedding, tolerance: int) -> CoverMatrix:
    """Cover table of ``e`` at the given hop tolerance (see CoverMatrix)."""
    return CoverMatrix(embedding=e, tolerance=tolerance)


def _pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu = np.triu_indices(n, k=1)
    return iu[0].astype(np.int32), iu[1].astype(np.int32)


def reduce_references(cm: CoverMatrix, max_pairs: int | None = None) -> ReductionResult:
    """Shrink the reference set while covering every node pair.

    Loop: every reference that is the sole cover of some uncovered pair is
    essential and enters the kept set; when no new essentials exist, the
    reference covering the most uncovered pairs is taken greedily (ties to the
    smallest node index). Terminates because each pair is always covered by its
    own two endpoints. The final max distortion is verified against the
    tolerance before returning.

    ``max_pairs`` aborts up front when the pair count exceeds the budget.
    """
    n = cm.node_count
    if max_pairs is not None and cm.pair_count > max_pairs:
        raise ValueError(f"pair count {cm.pair_count} exceeds max_pairs={max_pairs}")
    coords = cm.embedding.coords
    I, J = _pair_arrays(n)
    thresh = np.maximum(coords[I, J].astype(np.int64) - cm.tolerance, 0)

    dense = cm.pair_count * n <= _DENSE_CELL_BUDGET
    z: np.ndarray | None = None
    if dense and cm.pair_count:
        z = np.empty((cm.pair_count, n), dtype=bool)
        block = max(1, (1 << 22) // max(n, 1))
        for s in range(0, cm.pair_count, block):
            t = min(s + block, cm.pair_count)
            diff = np.abs(coords[I[s:t], :].astype(np.int64) - coords[J[s:t], :])
            z[s:t] = diff >= thresh[s:t, None]

    def cover_of(col: int, idx_i: np.ndarray, idx_j: np.ndarray, th: np.ndarray) -> np.ndarray:
        return np.abs(coords[idx_i, col].astype(np.int64) - coords[idx_j, col]) >= th

    kept: list[int] = []
    essential: list[int] = []
    greedy: list[int] = []
    while I.size:
        if z is not None:
            sole = z.sum(axis=1) == 1
            if sole.any():
                new = [int(c) for c in np.unique(np.argmax(z[sole], axis=1))]
                is_essential = True
            else:
                new = [int(np.argmax(z.sum(axis=0)))]
                is_essential = False
            covered = z[:, new].any(axis=1) if len(new) > 1 else z[:, new[0]].copy()
        else:
            # streamed pass over row blocks
            block = max(1, (1 << 22) // max(n, 1))
            col_counts = np.zeros(n, dtype=np.int64)
            sole_cols: set[int] = set()
            for s in range(0, I.size, block):
                t = min(s + block, I.size)
                zb = np.abs(coords[I[s:t], :].astype(np.int64) - coords[J[s:t], :]) >= thresh[s:t, None]
                col_counts += zb.sum(axis=0)
                for r in np.nonzero(zb.sum(axis=1) == 1)[0]:
                    sole_cols.add(int(np.argmax(zb[r])))
            if sole_cols:
                new = sorted(sole_cols)
                is_essential = True
            else:
                new = [int(np.argmax(col_counts))]
                is_essential = False
            covered = np.zeros(I.size, dtype=bool)
            for col in new:
                covered |= cover_of(col, I, J, thresh)
        (essential if is_essential else greedy).extend(new)
        kept.extend(new)
        keep_rows = ~covered
        I, J, thresh = I[keep_rows], J[keep_rows], thresh[keep_rows]
        if z is not None:
            z = z[keep_rows]

    kept_sorted = tuple(sorted(kept))
    # verify achieved distortion against the tolerance
    I, J = _pair_arrays(n)
    dm = coords[I, J].astype(np.int64)
    dv = np.zeros(I.size, dtype=np.int64)
    for col in kept_sorted:
        np.maximum(dv, np.abs(coords[I, col].astype(np.int64) - coords[J, col]), out=dv)
    distortion = dm - dv
    max_d = int(distortion.max()) if distortion.size else 0
    if max_d > cm.tolerance:
        raise AssertionError(f"reduction exceeded tolerance: {max_d} > {cm.tolerance}")
    counts = np.bincount(distortion) if distortion.size else np.array([], dtype=np.int64)
    hist = Histogram({int(v): int(c) for v, c in enumerate(counts) if c > 0})
    return ReductionResult(
        kept=kept_sorted,
        essential=tuple(sorted(essential)),
        greedy=tuple(sorted(greedy)),
        tolerance=cm.tolerance,
        max_distortion=max_d,
        distortion_histogram=hist,
    )


@dataclass(frozen=True)
class DistortionReport:
    """How far below the true hop distances an embedding's estimates sit."""

    max_hops: int
    histogram: Histogram
    max_relative: float | None


def embedding_distortion(g: Graph, references: Sequence[int]) -> DistortionReport:
    """Distortion of the reference set on ``g``: true distance minus estimate.

    Reported per unordered pair as a histogram of hop shortfalls plus the
    maximum; the maximum relative shortfall (d_true / d_estimate - 1) is
    computed over pairs with a nonzero estimate, None if there are none.
    """
    full = embed_full(g)
    sub = full.subset(tuple(references))
    n = g.node_count
    I, J = _pair_arrays(n)
    dm = full.coords[I, J].astype(np.int64)
    dv = np.zeros(I.size, dtype=np.int64)
    for r in sub.references:
        col = full.coords[:, r].astype(np.int64)
        np.maximum(dv, np.abs(col[I] - col[J]), out=dv)
    distortion = dm - dv
    if distortion.size and distortion.min() < 0:
        raise AssertionError("estimate exceeded true distance; embedding is corrupt")
    max_hops = int(distortion.max()) if distortion.size else 0
    counts = np.bincount(distortion) if distortion.size else np.array([], dtype=np.int64)
    hist = Histogram({int(v): int(c) for v, c in enumerate(counts) if c > 0})
    nz = dv > 0
    max_rel = float(np.max(dm[nz] / dv[nz] - 1.0)) if nz.any() else None
    return DistortionReport(max_hops=max_hops, histogram=hist, max_relative=max_rel)
