"""Command-line front end wiring every analysis stage into one binary.

Design notes:
- Node columns in all emitted files use the input-file node tokens (labels),
  so results can be joined across stages and back to the source data even
  though internal ids are dense and first-appearance ordered.
- Every run writes meta.json: tool version, subcommand, config echo, seed and
  a content digest per input file. No timestamps, so identical (config,
  inputs, seed) runs are byte-identical.
- Exit codes: 0 success, 1 parse/config error (bad flags, malformed input
  files, invalid generator recipes), 2 analysis precondition violation
  (disconnected graph for depth/embed, too few samples to fit, ...).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .crawl import (
    estimate_size,
    fit_rational,
    read_trace_csv,
    simulate_crawl,
    solve_acquisition_ode,
    write_trace_csv,
)
from .embedding import Embedding, build_cover_matrix, embed_full, reduce_references
from .generators import (
    AppendageSpec,
    DoubleParetoSpec,
    configuration_model,
    generate_appendage_graph,
    generate_double_pareto_degrees,
)
from .graph import EdgeListParseError, Graph, components, giant_core, load_edge_list
from .stats import (
    Histogram,
    degree_histogram,
    fit_double_pareto,
    path_length_report,
    senior_stats,
)
from .structure import (
    PERSONALITY_CLASSES,
    decompose,
    depth_density_profile,
    depth_map,
    fiber_histogram,
    personality_report,
    tentacle_histogram,
)

OUT_DIR_ENV = "NETGEOM_OUT"


class CliError(Exception):
    """Configuration problem: wrong flags, malformed recipe, unknown node."""


class _Parser(argparse.ArgumentParser):
    """argparse terminates with status 2 on bad flags; we reserve 2 for
    analysis errors, so surface parse problems as CliError (exit 1) instead."""

    def error(self, message: str):  # noqa: A003 - argparse API
        raise CliError(message)


# ---------------------------------------------------------------------------
# shared plumbing


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _out_dir(args) -> str:
    out = args.out or os.environ.get(OUT_DIR_ENV) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _write_meta(out: str, args, input_paths: Sequence[str]) -> None:
    config = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "out"):
            continue
        if k in ("graph", "trace") and isinstance(v, str):
            v = os.path.basename(v)
        config[k] = v
    meta = {
        "tool": "netgeom",
        "version": __version__,
        "subcommand": args.func.__name__.removeprefix("_cmd_").replace("_", "-"),
        "config": config,
        "seed": getattr(args, "seed", None),
        "inputs": {os.path.basename(p): _sha256(p) for p in input_paths},
    }
    _write_json(os.path.join(out, "meta.json"), meta)


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return load_edge_list(fh)


def _label_map(g: Graph) -> dict[str, int]:
    return {g.label_of(v): v for v in range(g.node_count)}


def _resolve_node(g: Graph, token: str) -> int:
    try:
        return _label_map(g)[token]
    except KeyError:
        raise CliError(f"node {token!r} not present in the graph") from None


def _edges_text(g: Graph) -> str:
    return "".join(f"{g.label_of(u)} {g.label_of(v)}\n" for u, v in g.edges())


def _parse_kv(tokens: Sequence[str], allowed: Sequence[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for tok in tokens:
        if "=" not in tok:
            raise CliError(f"expected KEY=VALUE, got {tok!r}")
        k, v = tok.split("=", 1)
        if k not in allowed:
            raise CliError(f"unknown key {k!r}; allowed: {', '.join(allowed)}")
        if k in out:
            raise CliError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _int_list(text: str, what: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CliError(f"{what} must be a comma-separated integer list, got {text!r}") from None


# ---------------------------------------------------------------------------
# generate


def _appendage_spec(tokens: Sequence[str], seed: int) -> AppendageSpec:
    kv = _parse_kv(tokens, ("core", "tentacles", "fibers", "loops"))
    if "core" not in kv:
        raise CliError("appendage recipe needs core=K<size> or core=R<size>:<edge_prob>")
    core = kv["core"]
    m = re.fullmatch(r"K(\d+)", core)
    if m:
        kind, size, prob = "complete", int(m.group(1)), 0.0
    else:
        m = re.fullmatch(r"R(\d+):([0-9.]+)", core)
        if not m:
            raise CliError(f"core must look like K10 or R12:0.3, got {core!r}")
        kind, size, prob = "random", int(m.group(1)), float(m.group(2))
    try:
        return AppendageSpec(
            core_size=size,
            core_kind=kind,
            edge_prob=prob,
            tentacle_lengths=_int_list(kv.get("tentacles", ""), "tentacles"),
            fiber_inner_counts=_int_list(kv.get("fibers", ""), "fibers"),
            allow_fiber_loops=kv.get("loops", "0") not in ("0", "false", "no"),
            seed=seed,
        )
    except ValueError as e:
        raise CliError(str(e)) from None


def _double_pareto_spec(tokens: Sequence[str], seed: int) -> DoubleParetoSpec:
    kv = _parse_kv(tokens, ("n", "alpha-left", "alpha-right", "break", "min", "max"))
    for key in ("n", "alpha-left", "alpha-right", "break"):
        if key not in kv:
            raise CliError(f"double-pareto recipe needs {key}=...")
    try:
        return DoubleParetoSpec(
            size=int(kv["n"]),
            alpha_left=float(kv["alpha-left"]),
            alpha_right=float(kv["alpha-right"]),
            break_degree=int(kv["break"]),
            min_degree=int(kv.get("min", "1")),
            max_degree=int(kv.get("max", "100000")),
            seed=seed,
        )
    except ValueError as e:
        raise CliError(str(e)) from None


def _cmd_generate(args) -> int:
    out = _out_dir(args)
    if args.appendage:
        spec = _appendage_spec(args.appendage, args.seed)
        g, roles = generate_appendage_graph(spec)
        _write_text(os.path.join(out, "edges.txt"), _edges_text(g))
        _write_text(
            os.path.join(out, "roles.txt"),
            "".join(f"{g.label_of(v)} {roles[v]}\n" for v in range(g.node_count)),
        )
    else:
        spec = _double_pareto_spec(args.double_pareto, args.seed)
        degrees = generate_double_pareto_degrees(spec)
        g = configuration_model(degrees, seed=args.seed)
        _write_text(os.path.join(out, "edges.txt"), _edges_text(g))
        _write_text(os.path.join(out, "degrees.txt"), "".join(f"{d}\n" for d in degrees))
        hist = degree_histogram(g)
        _write_text(
            os.path.join(out, "degree_hist.txt"),
            "# realized degree, node count\n" + hist.to_text(),
        )
    _write_meta(out, args, ())
    return 0


# ---------------------------------------------------------------------------
# stats


def _cmd_stats(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    lab = components(g)
    report: dict = {
        "graph": {
            "nodes": g.node_count,
            "edges": g.edge_count,
            "components": lab.count,
            "giant_core_size": lab.sizes[lab.giant_index],
            "self_loops_dropped": g.self_loops_dropped,
            "duplicate_edges_dropped": g.duplicate_edges_dropped,
        }
    }
    target = g
    if args.giant:
        target = giant_core(g)
        report["giant"] = True

    if args.degrees:
        hist = degree_histogram(target)
        _write_text(
            os.path.join(out, "degree_hist.txt"),
            "# degree, node count\n" + hist.to_text(),
        )
        section: dict = {"histogram": hist.as_dict(), "max": hist.max_value}
        if args.fit:
            fit = fit_double_pareto(hist)
            section["double_pareto"] = {
                "alpha_left": fit.alpha_left,
                "alpha_right": fit.alpha_right,
                "break_degree": fit.break_degree,
                "sse": fit.sse,
                "weighted": fit.weighted,
            }
        report["degrees"] = section

    if args.paths:
        mode, _, k = args.paths.partition(":")
        if mode == "exact":
            pl = path_length_report(target, mode="exact")
        elif mode == "sampled":
            if not k.isdigit() or int(k) < 1:
                raise CliError("--paths sampled needs a source count, e.g. sampled:200")
            pl = path_length_report(target, mode="sampled", sources=int(k), seed=args.seed)
        else:
            raise CliError(f"--paths must be exact or sampled:K, got {args.paths!r}")
        _write_text(
            os.path.join(out, "paths_hist.txt"),
            "# path length, pair count\n" + pl.histogram.to_text(),
        )
        report["paths"] = {
            "mean": pl.mean,
            "diameter": pl.diameter,
            "mode": pl.mode,
            "total_pairs": pl.total_pairs,
            "source_count": pl.source_count,
            "seed": pl.seed,
        }

    if args.seniors is not None:
        sr = senior_stats(target, threshold=args.seniors)
        _write_text(
            os.path.join(out, "senior_neighbor_hist.txt"),
            "# senior neighbors, senior node count\n" + sr.neighbor_histogram.to_text(),
        )
        report["seniors"] = {
            "threshold": sr.threshold,
            "count": sr.count,
            "fraction": sr.fraction,
            "no_senior_neighbor_count": sr.no_senior_neighbor_count,
            "mean_senior_neighbors": sr.mean_senior_neighbors,
        }

    _write_json(os.path.join(out, "report.json"), report)
    _write_meta(out, args, (args.graph,))
    return 0


# ---------------------------------------------------------------------------
# decompose


def _cmd_decompose(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    if args.giant:
        g = giant_core(g)
    d = decompose(g)
    labels = d.node_labels()
    _write_text(
        os.path.join(out, "roles.txt"),
        "".join(f"{g.label_of(v)} {labels[v]}\n" for v in range(g.node_count)),
    )
    t_hist, t_fit = tentacle_histogram(d)
    f_hist, f_fit = fiber_histogram(d)
    _write_text(
        os.path.join(out, "tentacle_hist.txt"),
        "# tentacle hop length, count\n" + t_hist.to_text(),
    )
    _write_text(
        os.path.join(out, "fiber_hist.txt"),
        "# fiber inner node count, count\n" + f_hist.to_text(),
    )
    _write_text(os.path.join(out, "dense_core_edges.txt"), _edges_text(d.dense_core))

    def fit_dict(fit):
        return None if fit is None else {"p": fit.p, "mean": fit.mean, "count": fit.count}

    summary = {
        "nodes": g.node_count,
        "core_size": d.core_size,
        "core_fraction": d.core_size / g.node_count,
        "tentacle_count": len(d.tentacles),
        "tentacle_node_count": d.tentacle_node_count,
        "loner_count": sum(1 for x in labels if x == "loner"),
        "fiber_count": len(d.fibers),
        "fiber_loop_count": sum(1 for f in d.fibers if f.is_loop),
        "pure_cycle_count": len(d.cycles),
        "tentacle_geometric_fit": fit_dict(t_fit),
        "fiber_geometric_fit": fit_dict(f_fit),
    }
    _write_json(os.path.join(out, "summary.json"), summary)
    _write_meta(out, args, (args.graph,))
    return 0


# ---------------------------------------------------------------------------
# depth


def _cmd_depth(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    if args.giant:
        g = giant_core(g)
    mode, _, k = args.mode.partition(":")
    if mode == "exact":
        dm = depth_map(g, mode="exact")
    elif mode == "sampled":
        if not k.isdigit() or int(k) < 1:
            raise CliError("--mode sampled needs an anchor count, e.g. sampled:64")
        dm = depth_map(g, mode="sampled", anchors=int(k), seed=args.seed)
    else:
        raise CliError(f"--mode must be exact or sampled:K, got {args.mode!r}")
    _write_text(
        os.path.join(out, "depth.csv"),
        "node,depth\n"
        + "".join(f"{g.label_of(v)},{dm.depths[v]!r}\n" for v in range(g.node_count)),
    )
    summary = {
        "mean_depth": dm.mean_depth,
        "min_depth": min(dm.depths),
        "max_depth": max(dm.depths),
        "mode": dm.mode,
        "anchors": list(dm.anchors) if dm.anchors else None,
        "seed": dm.seed,
    }
    if args.profile_bin is not None:
        if args.profile_bin <= 0:
            raise CliError("--profile-bin must be > 0")
        rows = depth_density_profile(g, dm, bin_width=args.profile_bin)
        _write_text(
            os.path.join(out, "profile.txt"),
            "# depth bin start, mean degree, node count\n"
            + "".join(f"{b!r} {m!r} {c}\n" for b, m, c in rows),
        )
        summary["profile_bin"] = args.profile_bin
    _write_json(os.path.join(out, "summary.json"), summary)
    _write_meta(out, args, (args.graph,))
    return 0


# ---------------------------------------------------------------------------
# personality


def _cmd_personality(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    if args.giant:
        g = giant_core(g)
    if args.tau < 0:
        raise CliError("--tau must be >= 0")
    pr = personality_report(g, tau=args.tau)
    _write_text(
        os.path.join(out, "personality.csv"),
        "node,degree,neighbor_mean_degree,score,class\n"
        + "".join(
            f"{g.label_of(v)},{pr.degree[v]},{pr.neighbor_mean_degree[v]!r},"
            f"{pr.score[v]!r},{pr.classes[v]}\n"
            for v in range(g.node_count)
        ),
    )
    lines = ["class,popular_pct,neutral_pct,marginal_pct\n"]
    for cls in PERSONALITY_CLASSES:
        row = pr.mixing[cls]
        if row is None:
            lines.append(f"{cls},,,\n")
        else:
            lines.append(f"{cls}," + ",".join(f"{100 * x:.1f}" for x in row) + "\n")
    _write_text(os.path.join(out, "mixing.csv"), "".join(lines))
    summary = {
        "tau": pr.tau,
        "class_counts": pr.class_counts,
        "marginal_popular_ratio": pr.marginal_popular_ratio,
    }
    _write_json(os.path.join(out, "summary.json"), summary)
    _write_meta(out, args, (args.graph,))
    return 0


# ---------------------------------------------------------------------------
# embed / reduce


def _coords_csv(g: Graph, e: Embedding) -> str:
    head = "node," + ",".join(g.label_of(r) for r in e.references) + "\n"
    body = "".join(
        f"{g.label_of(v)}," + ",".join(str(int(x)) for x in e.coords[v]) + "\n"
        for v in range(e.node_count)
    )
    return head + body


def _cmd_embed(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    e = embed_full(g)
    if args.refs:
        refs = tuple(_resolve_node(g, t) for t in args.refs.split(","))
        e = e.subset(refs)
    _write_text(os.path.join(out, "coords.csv"), _coords_csv(g, e))
    _write_json(
        os.path.join(out, "embedding.json"),
        {"nodes": e.node_count, "references": [g.label_of(r) for r in e.references], "full": e.full},
    )
    _write_meta(out, args, (args.graph,))
    return 0


def _cmd_reduce(args) -> int:
    out = _out_dir(args)
    if args.tolerance < 0:
        raise CliError("--tolerance must be >= 0")
    g = _load_graph(args.graph)
    e = embed_full(g)
    cm = build_cover_matrix(e, tolerance=args.tolerance)
    r = reduce_references(cm, max_pairs=args.max_pairs)
    _write_text(
        os.path.join(out, "refs.txt"), "".join(f"{g.label_of(v)}\n" for v in r.kept)
    )
    _write_text(
        os.path.join(out, "distortion_hist.txt"),
        "# hop shortfall, pair count\n" + r.distortion_histogram.to_text(),
    )
    summary = {
        "initial_references": e.node_count,
        "kept": len(r.kept),
        "essential": [g.label_of(v) for v in r.essential],
        "greedy": [g.label_of(v) for v in r.greedy],
        "tolerance": r.tolerance,
        "max_distortion": r.max_distortion,
    }
    _write_json(os.path.join(out, "reduction.json"), summary)
    _write_meta(out, args, (args.graph,))
    return 0


# ---------------------------------------------------------------------------
# crawl family


def _cmd_crawl_sim(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    start = 0 if args.start is None else _resolve_node(g, args.start)
    trace = simulate_crawl(g, start=start, policy=args.policy, stride=args.stride, seed=args.seed)
    write_trace_csv(trace, os.path.join(out, "trace.csv"))
    _write_json(
        os.path.join(out, "crawl.json"),
        {
            "policy": trace.policy,
            "stride": trace.stride,
            "seed": trace.seed,
            "start": g.label_of(trace.start),
            "samples": trace.samples,
            "true_size": trace.true_size,
            "complete": trace.complete,
        },
    )
    _write_meta(out, args, (args.graph,))
    return 0


def _cmd_estimate(args) -> int:
    out = _out_dir(args)
    trace = read_trace_csv(args.trace)
    est = estimate_size(trace, window=args.window)
    rows = ["sample_index,P,D,dprime,L_hat,S_hat,clamped_flag\n"]
    for i in range(est.p.size):
        if np.isfinite(est.size[i]):
            rows.append(
                f"{i},{int(est.p[i])},{int(est.d[i])},{float(est.dprime[i])!r},"
                f"{float(est.link_rate[i])!r},{float(est.size[i])!r},{int(est.clamped[i])}\n"
            )
        else:
            rows.append(f"{i},{int(est.p[i])},{int(est.d[i])},nan,nan,nan,0\n")
    _write_text(os.path.join(out, "estimate.csv"), "".join(rows))
    summary = {
        "window": est.window,
        "samples": int(est.p.size),
        "final_estimate": est.final,
        "true_size": trace.true_size,
        "clamped_samples": int(est.clamped.sum()),
    }
    if trace.true_size > 0:
        summary["final_relative_error"] = abs(est.final - trace.true_size) / trace.true_size
    _write_json(os.path.join(out, "estimate.json"), summary)
    _write_meta(out, args, (args.trace,))
    return 0


def _cmd_fit_rational(args) -> int:
    out = _out_dir(args)
    trace = read_trace_csv(args.trace)
    fit = fit_rational(trace)
    d_max = max(trace.d)
    _write_json(
        os.path.join(out, "rational.json"),
        {
            "a0": fit.a0,
            "a1": fit.a1,
            "a2": fit.a2,
            "a3": fit.a3,
            "a4": fit.a4,
            "rmse": fit.rmse,
            "p_min": fit.p_min,
            "p_max": fit.p_max,
            "max_d": d_max,
            "rmse_over_max_d": fit.rmse / d_max if d_max else None,
        },
    )
    curve = fit.evaluate(trace.p)
    _write_text(
        os.path.join(out, "curve.txt"),
        "# P, D observed, D fitted\n"
        + "".join(f"{p} {d} {float(c)!r}\n" for p, d, c in zip(trace.p, trace.d, curve)),
    )
    _write_meta(out, args, (args.trace,))
    return 0


def _cmd_solve_ode(args) -> int:
    out = _out_dir(args)
    sol = solve_acquisition_ode(
        p0=args.p0, d0=args.d0, dprime0=args.dprime0, step=args.step, p_max=args.pmax
    )
    _write_text(
        os.path.join(out, "ode.csv"),
        "P,D,dprime\n"
        + "".join(
            f"{float(p)!r},{float(d)!r},{float(v)!r}\n"
            for p, d, v in zip(sol.p, sol.d, sol.dprime)
        ),
    )
    implied = sol.implied_size()
    _write_json(
        os.path.join(out, "ode.json"),
        {
            "steps": int(sol.p.size),
            "final_p": float(sol.p[-1]),
            "final_d": float(sol.d[-1]),
            "final_dprime": float(sol.dprime[-1]),
            "implied_size_initial": float(implied[0]),
            "implied_size_final": float(implied[-1]),
            "implied_size_max_drift": float(np.max(np.abs(implied - implied[0]))),
        },
    )
    _write_meta(out, args, ())
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netgeom", description="Graph topology and geometry toolkit")
    parser.add_argument("--version", action="version", version=f"netgeom {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", default=None, help=f"output directory (default ${OUT_DIR_ENV} or .)")
        p.set_defaults(func=func)
        return p

    p = add("generate", _cmd_generate, "synthesize a graph with known ground truth")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument(
        "--appendage",
        nargs="+",
        metavar="KEY=VALUE",
        help="core=K10|R12:0.3 tentacles=1,2,... fibers=1,... loops=0|1",
    )
    grp.add_argument(
        "--double-pareto",
        nargs="+",
        metavar="KEY=VALUE",
        help="n=20000 alpha-left=1 alpha-right=3 break=25 min=1 max=100000",
    )
    p.add_argument("--seed", type=int, default=0, help="generator seed (recorded in meta.json)")

    p = add("stats", _cmd_stats, "whole-graph statistics report")
    p.add_argument("--graph", required=True, help="edge list file")
    p.add_argument("--degrees", action="store_true", help="emit the degree histogram")
    p.add_argument("--fit", action="store_true", help="fit a two-segment power law to the degrees")
    p.add_argument("--paths", default=None, help="path-length stats: exact or sampled:K")
    p.add_argument("--seniors", type=int, default=None, metavar="N",
                   help="high-degree cohort report at degree threshold N")
    p.add_argument("--giant", action="store_true", help="analyze the giant component only")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled path sources")

    p = add("decompose", _cmd_decompose, "split into dense core, tentacles and fibers")
    p.add_argument("--graph", required=True)
    p.add_argument("--giant", action="store_true", help="decompose the giant component only")

    p = add("depth", _cmd_depth, "per-node depth (mean hop distance to the rest)")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", default="exact", help="exact or sampled:K anchors")
    p.add_argument("--profile-bin", type=float, default=None, metavar="W",
                   help="also emit mean degree per depth bin of width W")
    p.add_argument("--giant", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled anchors")

    p = add("personality", _cmd_personality, "classify nodes by neighbor-degree balance")
    p.add_argument("--graph", required=True)
    p.add_argument("--tau", type=float, default=0.05,
                   help="neutral band half-width on the log10 score (default 0.05)")
    p.add_argument("--giant", action="store_true")

    p = add("embed", _cmd_embed, "hop-distance coordinates against reference nodes")
    p.add_argument("--graph", required=True)
    p.add_argument("--refs", default=None,
                   help="comma-separated node tokens to embed against (default: all nodes)")

    p = add("reduce", _cmd_reduce, "shrink the reference set under a distortion budget")
    p.add_argument("--graph", required=True)
    p.add_argument("--tolerance", type=int, default=0, metavar="T",
                   help="max allowed hop-distance shortfall (default 0)")
    p.add_argument("--max-pairs", type=int, default=None,
                   help="abort if the pair table would exceed this size")

    p = add("crawl-sim", _cmd_crawl_sim, "simulate a frontier crawl and record its trace")
    p.add_argument("--graph", required=True)
    p.add_argument("--policy", choices=("fifo", "random"), default="fifo")
    p.add_argument("--stride", type=int, default=1, help="record every Nth processed node")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", default=None, help="start node token (default: first node)")

    p = add("estimate", _cmd_estimate, "online size estimates along a recorded trace")
    p.add_argument("--trace", required=True, help="trace.csv from crawl-sim")
    p.add_argument("--window", type=int, default=None,
                   help="smoothing window in samples (default max(25, samples/100))")

    p = add("fit-rational", _cmd_fit_rational, "fit the rational acquisition curve to a trace")
    p.add_argument("--trace", required=True)

    p = add("solve-ode", _cmd_solve_ode, "integrate the discovery balance equation")
    p.add_argument("--p0", type=float, default=0.0)
    p.add_argument("--d0", type=float, required=True)
    p.add_argument("--dprime0", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--pmax", type=float, required=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as e:
        print(f"netgeom: error: {e}", file=sys.stderr)
        return 1
    except EdgeListParseError as e:
        print(f"netgeom: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"netgeom: error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"netgeom: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
