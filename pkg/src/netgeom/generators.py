"""Synthetic graph generators with exact ground-truth structure labels.

Two families:

* appendage graphs: a well-connected core decorated with pendant chains
  ("tentacles", ending in a degree-1 "loner") and chains whose both ends attach
  to the core ("fibers"). Role labels are returned per node and are exact.
* two-segment power-law ("double-Pareto") degree sequences realized through an
  erased configuration model.

All randomness is driven by numpy PCG64 streams seeded from the spec, so equal
seeds reproduce byte-identical graphs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

__all__ = [
    "ROLE_CORE",
    "ROLE_TENTACLE",
    "ROLE_LONER",
    "ROLE_FIBER",
    "AppendageSpec",
    "DoubleParetoSpec",
    "generate_appendage_graph",
    "generate_double_pareto_degrees",
    "configuration_model",
]

ROLE_CORE = "core"
ROLE_TENTACLE = "tentacle"
ROLE_LONER = "loner"
ROLE_FIBER = "fiber"

# Stub-matching retry policy: retry while a simple matching is plausibly near,
# otherwise fall back to erasing the offending pairs (see configuration_model).
_MATCHING_ATTEMPTS = 40
_MATCHING_HOPELESS = 16


@dataclass(frozen=True)
class AppendageSpec:
    """Recipe for an appendage graph.

    core_kind is "complete" or "random"; random cores use ``edge_prob`` and are
    repaired to be connected with minimum degree 3, so that every appendage is
    recoverable from the final graph (attachment never turns a core node into a
    chain node). Tentacle lengths and fiber inner-node counts are in nodes
    (tentacle length equals its hop count from the attachment point).
    """

    core_size: int
    core_kind: str = "complete"
    edge_prob: float = 0.0
    tentacle_lengths: tuple[int, ...] = ()
    fiber_inner_counts: tuple[int, ...] = ()
    allow_fiber_loops: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.core_kind not in ("complete", "random"):
            raise ValueError(f"unknown core kind {self.core_kind!r}")
        if self.core_size < 3:
            raise ValueError("core must have at least 3 nodes")
        if self.core_kind == "random":
            if not 0.0 <= self.edge_prob <= 1.0:
                raise ValueError("edge_prob must be in [0, 1]")
            if self.core_size < 4:
                raise ValueError("random cores need at least 4 nodes to reach min degree 3")
        if any(t < 1 for t in self.tentacle_lengths):
            raise ValueError("tentacle lengths must be >= 1")
        if any(f < 1 for f in self.fiber_inner_counts):
            raise ValueError("fiber inner-node counts must be >= 1")


@dataclass(frozen=True)
class DoubleParetoSpec:
    """Two-segment discrete power law, continuous at the break degree.

    P(k) is proportional to k^-alpha_left on [min_degree, break_degree] and to
    break_degree^(alpha_right - alpha_left) * k^-alpha_right above the break,
    truncated at max_degree so the table stays finite for any exponents.
    """

    size: int
    alpha_left: float
    alpha_right: float
    break_degree: int
    min_degree: int = 1
    max_degree: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be >= 1")
        if self.alpha_left <= 0 or self.alpha_right <= 0:
            raise ValueError("exponents must be > 0")
        if not 1 <= self.min_degree <= self.break_degree <= self.max_degree:
            raise ValueError("need 1 <= min_degree <= break_degree <= max_degree")


def _random_core_edges(m: int, p: float, rng: np.random.Generator) -> set[tuple[int, int]]:
    """G(m, p) repaired to be connected with min degree >= 3."""
    edges: set[tuple[int, int]] = set()
    mask = rng.random((m, m)) < p
    for u in range(m):
        for v in range(u + 1, m):
            if mask[u, v]:
                edges.add((u, v))

    def neighbors() -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(m)]
        for u, v in edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    # connect components: link a random node of each later component to a random
    # node of the first one
    nbrs = neighbors()
    seen = [False] * m
    comps: list[list[int]] = []
    for s in range(m):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    for comp in comps[1:]:
        u = int(rng.choice(comp))
        v = int(rng.choice(comps[0]))
        edges.add((min(u, v), max(u, v)))

    # raise minimum degree to 3
    nbrs = neighbors()
    for u in range(m):
        while len(nbrs[u]) < 3:
            candidates = [v for v in range(m) if v != u and v not in nbrs[u]]
            v = int(rng.choice(candidates))
            edges.add((min(u, v), max(u, v)))
            nbrs[u].add(v)
            nbrs[v].add(u)
    return edges


def generate_appendage_graph(spec: AppendageSpec) -> tuple[Graph, tuple[str, ...]]:
    """Build the graph described by ``spec`` and return it with per-node roles.

    Roles are exact ground truth: "core", "tentacle" (chain node), "loner"
    (chain end of degree 1) and "fiber" (inner node of a both-ends-attached
    chain). Tentacles and fibers attach to uniformly chosen core nodes whose
    degree inside the core is at least 3; fibers use two distinct attachment
    nodes unless ``allow_fiber_loops`` is set.
    """
    rng = np.random.default_rng(spec.seed)
    m = spec.core_size
    if spec.core_kind == "complete":
        core_edges = {(u, v) for u in range(m) for v in range(u + 1, m)}
    else:
        core_edges = _random_core_edges(m, spec.edge_prob, rng)

    core_degree = [0] * m
    for u, v in core_edges:
        core_degree[u] += 1
        core_degree[v] += 1
    eligible = [v for v in range(m) if core_degree[v] >= 3]
    if (spec.tentacle_lengths or spec.fiber_inner_counts) and not eligible:
        raise ValueError("core too small to host attachments (no core node of degree >= 3)")

    edges: list[tuple[int, int]] = sorted(core_edges)
    roles: list[str] = [ROLE_CORE] * m
    next_id = m

    for length in spec.tentacle_lengths:
        attach = int(rng.choice(eligible))
        prev = attach
        for i in range(length):
            node = next_id
            next_id += 1
            edges.append((prev, node))
            roles.append(ROLE_LONER if i == length - 1 else ROLE_TENTACLE)
            prev = node

    for inner in spec.fiber_inner_counts:
        if spec.allow_fiber_loops:
            a = int(rng.choice(eligible))
            b = int(rng.choice(eligible))
        else:
            if len(eligible) < 2:
                raise ValueError("core too small to host a fiber with distinct endpoints")
            pair = rng.choice(len(eligible), size=2, replace=False)
            a, b = eligible[int(pair[0])], eligible[int(pair[1])]
        prev = a
        for _ in range(inner):
            node = next_id
            next_id += 1
            edges.append((prev, node))
            roles.append(ROLE_FIBER)
            prev = node
        edges.append((prev, b))

    return Graph.from_edges(next_id, edges), tuple(roles)


def generate_double_pareto_degrees(spec: DoubleParetoSpec) -> list[int]:
    """Draw an i.i.d. degree sequence from the two-segment law, forced to even sum.

    If the raw sum is odd the first sample is incremented by one.
    """
    rng = np.random.default_rng(spec.seed)
    ks = np.arange(spec.min_degree, spec.max_degree + 1, dtype=np.float64)
    weights = ks ** (-spec.alpha_left)
    right = ks > spec.break_degree
    # continuity factor so both segments agree at the break degree
    scale = float(spec.break_degree) ** (spec.alpha_right - spec.alpha_left)
    weights[right] = scale * ks[right] ** (-spec.alpha_right)
    cdf = np.cumsum(weights)
    u = rng.random(spec.size) * cdf[-1]
    idx = np.searchsorted(cdf, u, side="right")
    degrees = (idx + spec.min_degree).astype(np.int64)
    if int(degrees.sum()) % 2 != 0:
        degrees[0] += 1
    return [int(d) for d in degrees]


def configuration_model(degrees: list[int], seed: int = 0) -> Graph:
    """Erased configuration model over ``degrees`` (sum must be even).

    Stubs are matched by uniform shuffling. The matching is re-drawn up to a
    few dozen times while it stays close to simple, so forced small instances
    (for example degrees [2, 2, 2]) realize their unique simple graph; once a
    matching carries many collisions the self-loops and duplicate edges are
    simply erased, which is the intended behavior for heavy-tailed sequences.
    """
    if any(d < 0 for d in degrees):
        raise ValueError("degrees must be >= 0")
    total = sum(degrees)
    if total % 2 != 0:
        raise ValueError(f"degree sum must be even, got {total}")
    n = len(degrees)
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    best_keys: np.ndarray | None = None
    for _ in range(_MATCHING_ATTEMPTS):
        rng.shuffle(stubs)
        u = stubs[0::2]
        v = stubs[1::2]
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        nonself = lo != hi
        keys = np.unique(lo[nonself] * np.int64(n) + hi[nonself])
        bad = int(len(u) - len(keys))
        best_keys = keys
        if bad == 0 or bad > _MATCHING_HOPELESS:
            break
    assert best_keys is not None or total == 0
    edges: list[tuple[int, int]] = []
    if best_keys is not None:
        edges = [(int(k) // n, int(k) % n) for k in best_keys]
    return Graph.from_edges(n, edges)
