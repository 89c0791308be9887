"""Structure of a connected graph at the scale between single nodes and the
whole graph: dense-core extraction with pendant-chain ("tentacle") and
attached-chain ("fiber") inventories, node depth maps, depth-density profiles
and neighbor-degree ("personality") classification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, components, induced_subgraph, _distances
from .stats import Histogram

__all__ = [
    "Tentacle",
    "Fiber",
    "Decomposition",
    "GeometricFit",
    "DepthMap",
    "PersonalityReport",
    "PERSONALITY_CLASSES",
    "decompose",
    "tentacle_histogram",
    "fiber_histogram",
    "depth_map",
    "depth_map_per_component",
    "depth_density_profile",
    "personality_report",
]

PERSONALITY_CLASSES = ("popular", "neutral", "marginal")


@dataclass(frozen=True)
class Tentacle:
    """Pendant chain peeled off the dense core, listed loner-first.

    ``attached_to`` is the node the chain hangs from: a dense-core node for
    chains rooted at the core, another chain node where a pendant tree
    branches, or None for the trunk of a fully peeled (tree) component.
    """

    nodes: tuple[int, ...]
    attached_to: int | None

    @property
    def loner(self) -> int:
        return self.nodes[0]

    @property
    def length(self) -> int:
        """Hop count from the attachment point to the loner (== node count)."""
        return len(self.nodes)


@dataclass(frozen=True)
class Fiber:
    """Chain of degree-2 core nodes strung between two attachment nodes of
    core degree >= 3. ``endpoints`` are the attachment nodes (not part of the
    fiber); a fiber whose ends meet the same node is a loop ("handle").
    """

    inner: tuple[int, ...]
    endpoints: tuple[int, int]

    @property
    def is_loop(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]

    @property
    def hops(self) -> int:
        """Endpoint-to-endpoint hop count (inner nodes + 1)."""
        return len(self.inner) + 1


@dataclass(frozen=True)
class GeometricFit:
    """Maximum-likelihood geometric law on {1, 2, ...}: p = 1 / sample mean."""

    p: float
    mean: float
    count: int


@dataclass(frozen=True)
class Decomposition:
    """Partition of a connected graph into its 2-core and pendant chains.

    ``roles[v]`` is "core" or "tentacle". ``dense_core`` is the induced 2-core
    with ``origin_nodes`` mapping back to the input graph. ``cycles`` lists
    core components that are pure cycles (every node degree 2); their nodes are
    core members, not fibers.
    """

    roles: tuple[str, ...]
    tentacles: tuple[Tentacle, ...]
    fibers: tuple[Fiber, ...]
    cycles: tuple[tuple[int, ...], ...]
    dense_core: Graph

    @property
    def core_size(self) -> int:
        return self.dense_core.node_count

    @property
    def tentacle_node_count(self) -> int:
        return sum(len(t.nodes) for t in self.tentacles)

    def node_labels(self) -> tuple[str, ...]:
        """Fine-grained roles: core / tentacle / loner / fiber."""
        labels = list(self.roles)
        for t in self.tentacles:
            labels[t.loner] = "loner"
        for f in self.fibers:
            for v in f.inner:
                labels[v] = "fiber"
        return tuple(labels)


def _peel(g: Graph) -> tuple[list[bool], list[int], list[int | None]]:
    """Iteratively remove degree-1 nodes.

    Returns (removed flags, removal order, parent per removed node). The parent
    is the single live neighbor at removal time (the next node toward the core,
    or toward later-removed chain nodes), or None when the node was the last of
    a fully peeled component.
    """
    n = g.node_count
    deg = g.degrees()
    removed = [False] * n
    parent: list[int | None] = [None] * n
    order: list[int] = []
    stack = [v for v in range(n) if deg[v] == 1]
    while stack:
        u = stack.pop()
        if removed[u]:
            continue
        removed[u] = True
        order.append(u)
        for w in g.neighbors(u):
            if not removed[w]:
                parent[u] = w
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return removed, order, parent


def _split_chains(
    g: Graph,
    removed: list[bool],
    order: list[int],
    parent: list[int | None],
) -> list[Tentacle]:
    """Break the peeled forest into maximal chains, loner-first.

    Trees are split at branch nodes; the segment nearest the attachment follows
    the tallest branch (ties to the smallest node index). Components with no
    core attachment are rooted at their last-removed node.
    """
    children: dict[int, list[int]] = {}
    for u in order:
        p = parent[u]
        if p is not None and removed[p]:
            children.setdefault(p, []).append(u)

    height: dict[int, int] = {}
    for u in order:  # children are always removed before their parent
        kids = children.get(u, ())
        height[u] = 1 + max((height[c] for c in kids), default=0)

    tops: list[tuple[int, int | None]] = []  # (top node, attachment or None)
    for u in order:
        p = parent[u]
        if p is None:
            tops.append((u, None))
        elif not removed[p]:
            tops.append((u, p))
    tops.sort(key=lambda t: t[0])

    tentacles: list[Tentacle] = []
    work = list(reversed(tops))
    while work:
        top, attach = work.pop()
        trunk: list[int] = []
        cur: int | None = top
        while cur is not None:
            trunk.append(cur)
            kids = sorted(children.get(cur, ()), key=lambda c: (-height[c], c))
            nxt = kids[0] if kids else None
            for other in kids[1:]:
                work.append((other, cur))
            cur = nxt
        tentacles.append(Tentacle(nodes=tuple(reversed(trunk)), attached_to=attach))
    tentacles.sort(key=lambda t: t.nodes)
    return tentacles


def _find_fibers(g: Graph, core_nodes: list[int]) -> tuple[list[Fiber], list[tuple[int, ...]]]:
    """Locate degree-2 chains and pure cycles inside the core subgraph."""
    core_set = set(core_nodes)
    cdeg = {v: sum(1 for w in g.neighbors(v) if w in core_set) for v in core_nodes}
    seen: set[int] = set()
    fibers: list[Fiber] = []
    cycles: list[tuple[int, ...]] = []

    def walk(start: int, first: int) -> tuple[list[int], int | None]:
        """Follow degree-2 nodes from start via first; return (run, terminal)."""
        run = [start]
        prev, cur = start, first
        while cdeg[cur] == 2:
            if cur == start:  # closed a pure cycle
                return run, None
            run.append(cur)
            nxts = [w for w in g.neighbors(cur) if w in core_set and w != prev]
            prev, cur = cur, nxts[0]
        return run, cur

    for v in sorted(core_nodes):
        if cdeg[v] != 2 or v in seen:
            continue
        nbrs = [w for w in g.neighbors(v) if w in core_set]
        left_run, left_end = walk(v, nbrs[0])
        if left_end is None:
            cycle = tuple(left_run)
            seen.update(cycle)
            cycles.append(cycle)
            continue
        right_run, right_end = walk(v, nbrs[1])
        assert right_end is not None
        # left_run and right_run both start at v; stitch them into one chain
        inner = list(reversed(left_run[1:])) + [v] + right_run[1:]
        a, b = left_end, right_end
        if (b, tuple(reversed(inner))) < (a, tuple(inner)):
            a, b = b, a
            inner = list(reversed(inner))
        fibers.append(Fiber(inner=tuple(inner), endpoints=(a, b)))
        seen.update(inner)
    fibers.sort(key=lambda f: f.inner)
    return fibers, cycles


def decompose(gc: Graph) -> Decomposition:
    """Split a connected graph into its 2-core plus pendant chains.

    Degree-1 nodes are peeled iteratively; what remains is the dense core.
    Peeled nodes are grouped into loner-first chains. Inside the core, maximal
    degree-2 chains whose both terminals have core degree >= 3 are reported as
    fibers; core components that are pure cycles are reported separately. A
    tree input yields the degenerate result with an empty core (not an error).

    Raises ValueError for empty or disconnected input.
    """
    n = gc.node_count
    if n == 0:
        raise ValueError("cannot decompose an empty graph")
    lab = components(gc)
    if lab.count != 1:
        raise ValueError(f"graph is disconnected ({lab.count} components); decompose one component at a time")

    removed, order, parent = _peel(gc)
    roles = tuple("tentacle" if removed[v] else "core" for v in range(n))
    tentacles = _split_chains(gc, removed, order, parent)
    core_nodes = [v for v in range(n) if not removed[v]]
    fibers, cycles = _find_fibers(gc, core_nodes)
    dense = induced_subgraph(gc, core_nodes)
    return Decomposition(
        roles=roles,
        tentacles=tuple(tentacles),
        fibers=tuple(fibers),
        cycles=tuple(cycles),
        dense_core=dense,
    )


def _geometric_fit(values: list[int]) -> GeometricFit | None:
    if not values:
        return None
    mean = sum(values) / len(values)
    return GeometricFit(p=1.0 / mean, mean=mean, count=len(values))


def tentacle_histogram(d: Decomposition) -> tuple[Histogram, GeometricFit | None]:
    """Histogram of tentacle hop lengths with a geometric-law MLE (None if no tentacles)."""
    lengths = [t.length for t in d.tentacles]
    return Histogram.from_values(lengths), _geometric_fit(lengths)


def fiber_histogram(d: Decomposition) -> tuple[Histogram, GeometricFit | None]:
    """Histogram of fiber inner-node counts with a geometric-law MLE.

    Endpoint-to-endpoint hop counts are inner + 1 (see Fiber.hops).
    """
    inner = [len(f.inner) for f in d.fibers]
    return Histogram.from_values(inner), _geometric_fit(inner)


@dataclass(frozen=True)
class DepthMap:
    """Per-node depth: mean hop distance to the rest of the graph.

    Sampled mode averages distance to a fixed shared anchor set instead, so
    values stay comparable across nodes; ``anchors`` records the set.
    """

    depths: tuple[float, ...]
    mean_depth: float
    mode: str
    anchors: tuple[int, ...] | None = None
    seed: int | None = None


def depth_map(g: Graph, mode: str = "exact", anchors: int | None = None, seed: int = 0) -> DepthMap:
    """Depth (mean BFS distance) of every node of a connected graph.

    Exact mode averages over all other nodes; its mean depth equals the mean
    pairwise shortest-path length. Sampled mode averages over ``anchors``
    distinct uniformly chosen anchor nodes shared by all nodes (a node that is
    itself an anchor contributes its own zero distance). Raises ValueError on
    disconnected input.
    """
    n = g.node_count
    if n == 0:
        raise ValueError("depth of an empty graph is undefined")
    lab = components(g)
    if lab.count != 1:
        raise ValueError(f"graph is disconnected ({lab.count} components); see depth_map_per_component")
    if mode == "exact":
        if n == 1:
            depths = [0.0]
        else:
            sums = [0] * n
            for u in range(n):
                dist = _distances(g, u)
                for v, dv in enumerate(dist):
                    sums[v] += dv
            depths = [s / (n - 1) for s in sums]
        return DepthMap(depths=tuple(depths), mean_depth=sum(depths) / n, mode="exact")
    if mode == "sampled":
        if anchors is None or anchors < 1:
            raise ValueError("sampled mode needs anchors >= 1")
        k = min(anchors, n)
        rng = np.random.default_rng(seed)
        chosen = tuple(sorted(int(a) for a in rng.choice(n, size=k, replace=False)))
        sums = [0] * n
        for a in chosen:
            dist = _distances(g, a)
            for v, dv in enumerate(dist):
                sums[v] += dv
        depths = [s / k for s in sums]
        return DepthMap(depths=tuple(depths), mean_depth=sum(depths) / n, mode="sampled", anchors=chosen, seed=seed)
    raise ValueError(f"unknown mode {mode!r}")


def depth_map_per_component(
    g: Graph, mode: str = "exact", anchors: int | None = None, seed: int = 0
) -> list[tuple[Graph, DepthMap]]:
    """Depth maps of each connected component, as (component subgraph, map) pairs.

    Each subgraph's ``origin_nodes`` maps its indices back to ``g``.
    """
    lab = components(g)
    out: list[tuple[Graph, DepthMap]] = []
    for cid in range(lab.count):
        nodes = [v for v in range(g.node_count) if lab.component_id[v] == cid]
        sub = induced_subgraph(g, nodes)
        out.append((sub, depth_map(sub, mode=mode, anchors=anchors, seed=seed)))
    return out


def depth_density_profile(
    g: Graph, dm: DepthMap, bin_width: float = 0.25
) -> list[tuple[float, float, int]]:
    """Mean degree as a function of depth, binned.

    Returns rows (bin start, mean degree of nodes in the bin, node count),
    sorted by bin start. Bin b covers depths [b, b + bin_width).
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be > 0")
    if len(dm.depths) != g.node_count:
        raise ValueError("depth map does not match graph")
    acc: dict[int, tuple[int, int]] = {}
    for v, depth in enumerate(dm.depths):
        b = int(math.floor(depth / bin_width))
        s, c = acc.get(b, (0, 0))
        acc[b] = (s + g.degree(v), c + 1)
    return [(b * bin_width, s / c, c) for b, (s, c) in sorted(acc.items())]


@dataclass(frozen=True)
class PersonalityReport:
    """Neighbor-degree classification of every node.

    score[v] = log10(neighbor mean degree / own degree). Nodes whose neighbors
    are on average better connected than themselves (score > tau) are
    "marginal"; better-connected-than-their-neighbors nodes (score < -tau) are
    "popular"; the band |score| <= tau is "neutral". ``mixing`` maps each class
    to the fraction of its pooled neighbor endpoints falling in each class
    (rows ordered per PERSONALITY_CLASSES; None for an empty class).
    """

    tau: float
    degree: tuple[int, ...]
    neighbor_mean_degree: tuple[float, ...]
    activity_ratio: tuple[float, ...]
    score: tuple[float, ...]
    classes: tuple[str, ...]
    class_counts: dict[str, int]
    marginal_popular_ratio: float | None
    mixing: dict[str, tuple[float, float, float] | None]


def personality_report(g: Graph, tau: float = 0.05) -> PersonalityReport:
    """Classify nodes by the balance between their own and their neighbors' degrees.

    Requires minimum degree 1 (every node needs at least one neighbor) and
    tau >= 0.
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    n = g.node_count
    if n == 0:
        raise ValueError("personality of an empty graph is undefined")
    degs = g.degrees()
    if any(d == 0 for d in degs):
        raise ValueError("isolated node present; every node needs degree >= 1")

    nmd: list[float] = []
    ratio: list[float] = []
    score: list[float] = []
    classes: list[str] = []
    for v in range(n):
        m = sum(degs[w] for w in g.neighbors(v)) / degs[v]
        nmd.append(m)
        ratio.append(m / degs[v])
        s = math.log10(m) - math.log10(degs[v])
        score.append(s)
        if s < -tau:
            classes.append("popular")
        elif s > tau:
            classes.append("marginal")
        else:
            classes.append("neutral")

    counts = {c: 0 for c in PERSONALITY_CLASSES}
    for c in classes:
        counts[c] += 1
    mp_ratio = counts["marginal"] / counts["popular"] if counts["popular"] else None

    pool = {c: [0, 0, 0] for c in PERSONALITY_CLASSES}
    idx = {c: i for i, c in enumerate(PERSONALITY_CLASSES)}
    for v in range(n):
        row = pool[classes[v]]
        for w in g.neighbors(v):
            row[idx[classes[w]]] += 1
    mixing: dict[str, tuple[float, float, float] | None] = {}
    for c in PERSONALITY_CLASSES:
        row = pool[c]
        t = sum(row)
        mixing[c] = tuple(x / t for x in row) if t else None

    return PersonalityReport(
        tau=tau,
        degree=tuple(degs),
        neighbor_mean_degree=tuple(nmd),
        activity_ratio=tuple(ratio),
        score=tuple(score),
        classes=tuple(classes),
        class_counts=counts,
        marginal_popular_ratio=mp_ratio,
        mixing=mixing,
    )
