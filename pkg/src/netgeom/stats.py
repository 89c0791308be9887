"""Whole-graph statistics: degree histograms, two-segment power-law fits,
high-degree ("senior") cohort reports and shortest-path length distributions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph, components, _distances

__all__ = [
    "Histogram",
    "DoubleParetoFit",
    "SeniorReport",
    "PathLengthReport",
    "degree_histogram",
    "fit_double_pareto",
    "senior_stats",
    "path_length_report",
]


class Histogram:
    """Integer-valued distribution as value -> count, plus derived summaries.

    Stored bins always have count >= 1. Text form is two whitespace-separated
    columns (value count), one bin per line, sorted by value; '#' comment lines
    are permitted and skipped when reading back.
    """

    __slots__ = ("_bins",)

    def __init__(self, bins: dict[int, int] | None = None):
        clean: dict[int, int] = {}
        for v, c in (bins or {}).items():
            if c < 0:
                raise ValueError(f"negative count for value {v}")
            if c > 0:
                clean[int(v)] = int(c)
        self._bins = dict(sorted(clean.items()))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "Histogram":
        bins: dict[int, int] = {}
        for v in values:
            bins[int(v)] = bins.get(int(v), 0) + 1
        return cls(bins)

    @property
    def bins(self) -> dict[int, int]:
        return dict(self._bins)

    @property
    def total(self) -> int:
        return sum(self._bins.values())

    @property
    def mean(self) -> float:
        t = self.total
        if t == 0:
            raise ValueError("mean of an empty histogram is undefined")
        return sum(v * c for v, c in self._bins.items()) / t

    @property
    def max_value(self) -> int:
        if not self._bins:
            raise ValueError("empty histogram has no max value")
        return max(self._bins)

    def count(self, value: int) -> int:
        return self._bins.get(value, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._bins.items())

    def __len__(self) -> int:
        return len(self._bins)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Histogram):
            return NotImplemented
        return self._bins == other._bins

    def __repr__(self) -> str:
        return f"Histogram({self._bins!r})"

    def to_text(self) -> str:
        return "".join(f"{v} {c}\n" for v, c in self._bins.items())

    @classmethod
    def from_text(cls, text: str) -> "Histogram":
        bins: dict[int, int] = {}
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {line_no}: expected 'value count', got {raw!r}")
            v, c = int(parts[0]), int(parts[1])
            bins[v] = bins.get(v, 0) + c
        return cls(bins)

    def as_dict(self) -> dict:
        out: dict = {"bins": {str(v): c for v, c in self._bins.items()}, "total": self.total}
        out["mean"] = self.mean if self.total else None
        return out


@dataclass(frozen=True)
class DoubleParetoFit:
    """Two log-log line segments joined at ``break_degree`` (shared bin)."""

    alpha_left: float
    alpha_right: float
    break_degree: int
    intercept_left: float
    intercept_right: float
    sse_left: float
    sse_right: float
    weighted: bool

    @property
    def sse(self) -> float:
        return self.sse_left + self.sse_right


@dataclass(frozen=True)
class SeniorReport:
    """Cohort of nodes at or above a degree threshold, and how they interlink."""

    threshold: int
    count: int
    fraction: float
    no_senior_neighbor_count: int
    mean_senior_neighbors: float
    neighbor_histogram: Histogram


@dataclass(frozen=True)
class PathLengthReport:
    """Shortest-path length distribution.

    Exact mode counts each unordered node pair once. Sampled mode counts
    (source, other) pairs from ``source_count`` BFS sources and is flagged as an
    estimate via mode == "sampled".
    """

    histogram: Histogram
    mean: float
    diameter: int
    mode: str
    total_pairs: int
    source_count: int | None = None
    seed: int | None = None


def degree_histogram(g: Graph) -> Histogram:
    """Histogram of node degrees (isolated nodes contribute to bin 0)."""
    return Histogram.from_values(g.degrees())


def _segment_stats(prefix: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Sum of each prefixed quantity over point indices [lo, hi]."""
    return prefix[hi + 1] - prefix[lo]


def fit_double_pareto(
    h: Histogram,
    weighted: bool = True,
    tail_fraction: float = 5e-4,
    min_segment_mass: float = 0.03,
) -> DoubleParetoFit:
    """Fit two power-law segments to a degree histogram on log-log axes.

    Every admissible break degree is swept (each segment keeps at least 3
    distinct bins; the break bin belongs to both segments) and the break with
    the smallest total squared error wins, earliest break on ties. Points are
    (log degree, log count) for occupied bins with degree >= 1; zero-count
    degrees are skipped, not interpolated.

    Three guards keep the near-empty far tail (whose log-counts sit on the
    count >= 1 floor and carry no slope information) from hijacking a segment:
    bins with a count below ``tail_fraction`` of the positive-degree total are
    dropped (relaxed as needed so at least 6 bins always remain); breaks that
    would leave either segment with less than ``min_segment_mass`` of the kept
    sample mass are skipped (unless no break qualifies); and with
    ``weighted=True`` (default) every remaining point is weighted by its
    count. All guards are invariant under uniform scaling of all counts, and
    so is the whole fit.

    Raises ValueError when fewer than 6 distinct positive-degree bins exist.
    """
    all_points = [(v, c) for v, c in h.items() if v >= 1]
    if len(all_points) < 6:
        raise ValueError(f"need at least 6 distinct positive-degree bins, got {len(all_points)}")
    total = sum(c for _, c in all_points)
    floor = max(1, int(tail_fraction * total))
    points = [(v, c) for v, c in all_points if c >= floor]
    if len(points) < 6:
        floor = sorted((c for _, c in all_points), reverse=True)[5]
        points = [(v, c) for v, c in all_points if c >= floor]
    deg = np.array([v for v, _ in points], dtype=np.float64)
    cnt = np.array([c for _, c in points], dtype=np.float64)
    x = np.log(deg)
    y = np.log(cnt)
    w = cnt if weighted else np.ones_like(cnt)
    if weighted:
        w = w / w.sum()  # scale invariance, and keeps the sums well conditioned

    def prefix(q: np.ndarray) -> np.ndarray:
        return np.concatenate(([0.0], np.cumsum(q)))

    pw, pwx, pwy = prefix(w), prefix(w * x), prefix(w * y)
    pwxx, pwxy, pwyy = prefix(w * x * x), prefix(w * x * y), prefix(w * y * y)

    def line(lo: int, hi: int) -> tuple[float, float, float]:
        sw = _segment_stats(pw, lo, hi)
        sx = _segment_stats(pwx, lo, hi)
        sy = _segment_stats(pwy, lo, hi)
        sxx = _segment_stats(pwxx, lo, hi)
        sxy = _segment_stats(pwxy, lo, hi)
        syy = _segment_stats(pwyy, lo, hi)
        denom = sw * sxx - sx * sx
        slope = (sw * sxy - sx * sy) / denom
        intercept = (sy - slope * sx) / sw
        sse = max(syy - intercept * sy - slope * sxy, 0.0)
        return slope, intercept, sse

    last = len(points) - 1
    # A segment whose bins hold almost none of the sample carries no slope
    # signal; restrict the sweep to breaks where both sides keep a real share
    # of the mass. When nothing qualifies, fall back to the full range.
    pc = prefix(cnt)
    kept_total = pc[-1]
    candidates = [
        b
        for b in range(2, last - 1)
        if _segment_stats(pc, 0, b) >= min_segment_mass * kept_total
        and _segment_stats(pc, b, last) >= min_segment_mass * kept_total
    ]
    if not candidates:
        candidates = list(range(2, last - 1))
    best: tuple[float, int] | None = None
    for b in candidates:
        _, _, sse_l = line(0, b)
        _, _, sse_r = line(b, last)
        sse_total = sse_l + sse_r
        if best is None or sse_total < best[0] - 1e-15:
            best = (sse_total, b)
    assert best is not None
    b = best[1]
    slope_l, icpt_l, sse_l = line(0, b)
    slope_r, icpt_r, sse_r = line(b, last)
    return DoubleParetoFit(
        alpha_left=-slope_l,
        alpha_right=-slope_r,
        break_degree=int(deg[b]),
        intercept_left=icpt_l,
        intercept_right=icpt_r,
        sse_left=sse_l,
        sse_right=sse_r,
        weighted=weighted,
    )


def senior_stats(g: Graph, threshold: int = 25) -> SeniorReport:
    """Report the cohort of nodes with degree >= threshold.

    The fraction is relative to ``g``'s node count, so pass the giant core (or
    whatever population the cohort should be measured against) directly.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    if g.node_count == 0:
        raise ValueError("senior stats of an empty graph are undefined")
    degs = g.degrees()
    senior = [v for v in range(g.node_count) if degs[v] >= threshold]
    is_senior = [d >= threshold for d in degs]
    neighbor_counts = [sum(1 for w in g.neighbors(v) if is_senior[w]) for v in senior]
    count = len(senior)
    return SeniorReport(
        threshold=threshold,
        count=count,
        fraction=count / g.node_count,
        no_senior_neighbor_count=sum(1 for c in neighbor_counts if c == 0),
        mean_senior_neighbors=(sum(neighbor_counts) / count) if count else 0.0,
        neighbor_histogram=Histogram.from_values(neighbor_counts),
    )


def _hist_from_counts(counts: np.ndarray) -> Histogram:
    return Histogram({int(v): int(c) for v, c in enumerate(counts) if c > 0})


def path_length_report(
    g: Graph,
    mode: str = "exact",
    sources: int | None = None,
    seed: int = 0,
) -> PathLengthReport:
    """Distribution of shortest-path hop lengths over a connected graph.

    mode="exact" runs BFS from every node and counts each unordered pair once.
    mode="sampled" runs BFS from ``sources`` distinct uniformly chosen nodes and
    counts ordered (source, other) pairs; the result is an estimate and is
    flagged by its mode. Raises ValueError if the graph is disconnected (the
    message names the component count) or has fewer than 2 nodes.
    """
    n = g.node_count
    if n < 2:
        raise ValueError("path lengths need at least 2 nodes")
    lab = components(g)
    if lab.count != 1:
        raise ValueError(f"graph is disconnected ({lab.count} components); reduce to one component first")
    counts = np.zeros(n, dtype=np.int64)
    if mode == "exact":
        for u in range(n - 1):
            dist = np.array(_distances(g, u), dtype=np.int64)
            counts += np.bincount(dist[u + 1 :], minlength=n)
        total = n * (n - 1) // 2
        src_count = None
        used_seed = None
    elif mode == "sampled":
        if sources is None or sources < 1:
            raise ValueError("sampled mode needs sources >= 1")
        k = min(sources, n)
        rng = np.random.default_rng(seed)
        chosen = rng.choice(n, size=k, replace=False)
        for u in sorted(int(u) for u in chosen):
            dist = np.array(_distances(g, u), dtype=np.int64)
            dist[u] = 0
            row = np.bincount(dist, minlength=n)
            row[0] -= 1  # drop the source itself
            counts += row
        total = k * (n - 1)
        src_count = k
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")
    hist = _hist_from_counts(counts)
    mean = float(np.dot(np.arange(n), counts) / total)
    return PathLengthReport(
        histogram=hist,
        mean=mean,
        diameter=hist.max_value,
        mode=mode,
        total_pairs=int(total),
        source_count=src_count,
        seed=used_seed,
    )
