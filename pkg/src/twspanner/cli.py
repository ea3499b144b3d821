"""Command-line front end: generate | build | analyze | sweep.

Exit codes: 0 success, 2 invalid parameters, 3 infeasible construction,
4 I/O or input-format error, 5 analysed graph is disconnected.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from twspanner import __version__
from twspanner.core_graph import GeoGraph, GeometryError, PointSet, dilation, is_plane_drawing, max_degree
from twspanner.kernels import BACKEND
from twspanner.minor_tw import minor3core, treewidth_estimate
from twspanner.pointgen import (
    GridLikeParams,
    InfeasibleError,
    circle_points,
    grid_like_set,
    random_points,
    sawtooth_order,
)
from twspanner.spanners import (
    ParameterError,
    SpannerConfig,
    bounded_tw_spanner,
    delaunay,
    greedy_spanner,
    plane_bounded_tw_spanner,
)
from twspanner.tree_tools import emst

log = logging.getLogger("twspanner")

EXIT_OK, EXIT_PARAMS, EXIT_INFEASIBLE, EXIT_IO, EXIT_DISCONNECTED = 0, 2, 3, 4, 5
ALGOS = ("emst", "greedy", "alg1", "alg2", "delaunay", "sawtooth")
SWEEP_FIELDS = ["algo", "d", "n", "k", "seed", "dilation", "edges", "max_degree",
                "tw_estimate", "tw_exact", "seconds"]


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- manifest

def write_manifest(args, argv, started, extra=None):
    manifest = {
        "command": args.command,
        "argv": list(argv),
        "params": {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)},
        "seed": getattr(args, "seed", None),
        "input": getattr(args, "input", None),
        "output": getattr(args, "out", None),
        "version": __version__,
        "backend": BACKEND,
        "duration_seconds": round(time.perf_counter() - started, 6),
    }
    if extra:
        manifest.update(extra)
    text = json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n"
    if args.out:
        Path(str(args.out) + ".manifest.json").write_text(text)
    else:
        sys.stderr.write(text)
    return manifest


def _emit(args, text):
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    else:
        sys.stdout.write(text)


def _load_points(path) -> PointSet:
    try:
        return PointSet.load(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    except (ValueError, GeometryError) as exc:
        raise CliError(f"bad point-set file {path}: {exc}", EXIT_IO) from exc


def _load_graph(path) -> GeoGraph:
    try:
        return GeoGraph.load(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    except (ValueError, KeyError, TypeError, GeometryError) as exc:
        raise CliError(f"bad graph file {path}: {exc}", EXIT_IO) from exc


# ---------------------------------------------------------------- generate

def cmd_generate(args, argv, started):
    extra = {}
    if args.kind == "random":
        ps = random_points(args.d, args.n, args.seed, args.box)
    elif args.kind == "circle":
        ps = circle_points(args.n)
    else:
        params = GridLikeParams(d=args.d, n=args.n, h=args.h, m=args.m, k=args.k,
                                edge_count=args.edge_count)
        gl = grid_like_set(params)
        ps = gl.points
        extra["gridlike"] = gl.meta
    _emit(args, ps.dumps())
    write_manifest(args, argv, started, extra)
    return EXIT_OK


# ---------------------------------------------------------------- build

def build_graph(ps: PointSet, algo: str, k=None, t=1.5, C=1.0) -> GeoGraph:
    if algo == "emst":
        return emst(ps)
    if algo == "greedy":
        return greedy_spanner(ps, t)
    if algo == "alg1":
        return bounded_tw_spanner(ps, SpannerConfig(k=_need_k(k), C=C, t_greedy=t))
    if algo == "alg2":
        return plane_bounded_tw_spanner(ps, _need_k(k))
    if algo == "delaunay":
        return delaunay(ps)
    if algo == "sawtooth":
        n = len(ps)
        if ps.dim != 2 or n < 3 or not np.allclose(ps.coords, circle_points(n).coords, atol=1e-12):
            raise ParameterError("sawtooth needs the circle point set of the same size")
        order = sawtooth_order(n)
        return GeoGraph(ps, list(zip(order, order[1:])), meta={"algo": "sawtooth"})
    raise ParameterError(f"unknown algorithm {algo!r}")


def _need_k(k):
    if k is None:
        raise ParameterError("--k is required for this algorithm")
    return k


def cmd_build(args, argv, started):
    ps = _load_points(args.input)
    g = build_graph(ps, args.algo, args.k, args.t, args.C)
    _emit(args, g.dumps())
    meta = {k: v for k, v in g.meta.items() if isinstance(v, (int, float, str, bool, list))}
    write_manifest(args, argv, started, {"graph": {"edges": len(g.edges), **meta}})
    return EXIT_OK


# ---------------------------------------------------------------- analyze

def analyze_graph(g: GeoGraph, checks=None) -> dict:
    checks = set(checks or ("dilation", "degree", "plane", "core", "treewidth"))
    row: dict = {"n": g.n, "d": g.points.dim, "edges": len(g.edges)}
    if "dilation" in checks and g.n >= 2:
        rep = dilation(g)
        row["dilation"] = rep.dilation
        row["witness"] = f"{rep.witness[0]}-{rep.witness[1]}"
        row["connected"] = rep.connected
    if "degree" in checks:
        row["max_degree"] = max_degree(g)
    if "plane" in checks and g.points.dim == 2:
        row["plane"] = is_plane_drawing(g)
    ag = g.to_abstract()
    if "core" in checks:
        core = minor3core(ag).core
        row["core_vertices"] = core.n
        row["core_edges"] = core.edge_count
    if "treewidth" in checks:
        est = treewidth_estimate(ag)
        row["treewidth"] = est.label()
        row["treewidth_method"] = est.method
    return row


def _format_value(v):
    if isinstance(v, float):
        return "inf" if math.isinf(v) else f"{v:.6f}"
    return str(v)


def render(rows: list[dict], fmt: str, fields=None) -> str:
    fields = fields or (list(rows[0]) if rows else [])
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _format_value(r.get(k, "")) for k in fields})
        return buf.getvalue()
    width = max((len(f) for f in fields), default=0)
    lines = []
    for r in rows:
        lines += [f"{f:<{width}}  {_format_value(r.get(f, ''))}" for f in fields]
    return "\n".join(lines) + "\n"


def cmd_analyze(args, argv, started):
    g = _load_graph(args.input)
    checks = args.checks.split(",") if args.checks else None
    row = analyze_graph(g, checks)
    _emit(args, render([row], args.format))
    write_manifest(args, argv, started, {"report": row})
    if row.get("connected") is False:
        return EXIT_DISCONNECTED
    return EXIT_OK


# ---------------------------------------------------------------- sweep

def load_sweep_spec(path) -> list[dict]:
    """Expand a sweep spec into run cells.

    The file holds one grid or {"grids": [...]}; each grid maps algo, d, n, k,
    seeds to scalars or lists, plus scalar C and t.
    """
    try:
        spec = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"bad sweep spec {path}: {exc}", EXIT_IO) from exc
    grids = spec.get("grids", [spec] if spec else [])
    cells = []
    for grid in grids:
        if not grid:
            continue
        lists = {key: grid.get(key, default) for key, default in
                 (("algo", ["alg1"]), ("d", [2]), ("n", []), ("k", [None]), ("seeds", [0]))}
        lists = {key: v if isinstance(v, list) else [v] for key, v in lists.items()}
        for algo, d, n, k, seed in itertools.product(*lists.values()):
            cells.append({"algo": algo, "d": d, "n": n, "k": k, "seed": seed,
                          "C": grid.get("C", 1.0), "t": grid.get("t", 1.5)})
    return cells


def run_cell(cell: dict) -> dict:
    started = time.perf_counter()
    if cell["algo"] == "sawtooth":
        ps = circle_points(cell["n"])
    else:
        ps = random_points(cell["d"], cell["n"], cell["seed"])
    g = build_graph(ps, cell["algo"], cell["k"], cell["t"], cell["C"])
    rep = dilation(g)
    est = treewidth_estimate(g.to_abstract())
    return {
        "algo": cell["algo"], "d": cell["d"], "n": cell["n"],
        "k": "" if cell["k"] is None else cell["k"], "seed": cell["seed"],
        "dilation": rep.dilation, "edges": len(g.edges), "max_degree": max_degree(g),
        "tw_estimate": est.label(), "tw_exact": est.exact,
        "seconds": time.perf_counter() - started,
    }


def sweep_rows(cells: list[dict], jobs: int = 1) -> list[dict]:
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(c) for c in cells]
    rows.sort(key=lambda r: (r["algo"], r["d"], r["n"], str(r["k"]).zfill(8), r["seed"]))
    return rows


def cmd_sweep(args, argv, started):
    cells = load_sweep_spec(args.input)
    rows = sweep_rows(cells, args.jobs)
    fmt = "csv" if args.format == "text" else args.format
    _emit(args, render(rows, fmt, SWEEP_FIELDS))
    write_manifest(args, argv, started, {"cells": len(cells)})
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="twspanner", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="write a point-set file")
    p.add_argument("kind", choices=("random", "circle", "gridlike"))
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int)
    p.add_argument("--box", type=float, default=1.0)
    p.add_argument("--h", type=int, help="gridlike: grid side parameter (overrides --k)")
    p.add_argument("--m", type=int, help="gridlike: points per grid edge (overrides --n)")
    p.add_argument("--k", type=int, help="gridlike: tree-width parameter used to derive h")
    p.add_argument("--edge-count", choices=("exact", "loose"), default="exact")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("build", parents=[common], help="construct a spanner from a point-set file")
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=float, default=1.5)
    p.add_argument("--C", type=float, default=1.0)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", parents=[common], help="report dilation, degree, planarity, core, tree-width")
    p.add_argument("input")
    p.add_argument("--checks", help="comma list of dilation,degree,plane,core,treewidth")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", parents=[common], help="run a parameter grid and write CSV rows")
    p.add_argument("input", help="JSON sweep spec")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def _validate(args):
    if args.command == "generate":
        if args.kind in ("random", "circle") and args.n is None:
            raise ParameterError("--n is required")
        if args.kind == "gridlike" and args.n is None and args.m is None:
            raise ParameterError("gridlike needs --n or --m")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARAMS
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    started = time.perf_counter()
    try:
        _validate(args)
        return args.func(args, argv, started)
    except CliError as exc:
        log.error("%s", exc)
        return exc.code
    except InfeasibleError as exc:
        log.error("infeasible: %s", exc)
        return EXIT_INFEASIBLE
    except GeometryError as exc:
        log.error("infeasible: %s", exc)
        return EXIT_INFEASIBLE
    except (ParameterError, ValueError) as exc:
        log.error("invalid parameters: %s", exc)
        return EXIT_PARAMS
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO


def replay_manifest(path) -> int:
    """Re-run the command recorded in a manifest file."""
    manifest = json.loads(Path(path).read_text())
    return main(manifest["argv"])


if __name__ == "__main__":
    sys.exit(main())
