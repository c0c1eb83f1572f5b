"""Command-line front end.

stdout carries machine-readable data only (canonical JSON or CSV); stderr
carries diagnostics.  Exit codes: 0 success, 1 bad input or broken invariant,
2 resource cap or budget refused the work, 3 the asserted genus was detected
to be impossible for the input graph.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .acceptance import run_all
from .bounds import bounds_table
from .errors import (
    ArityExceeded,
    BudgetExceeded,
    CapacityExceeded,
    CapExceeded,
    DegeneracyViolation,
    GenusAssumptionViolated,
    OrichromeError,
    TooLarge,
)
from .generate import generate
from .graphs import graph_from_json, graph_to_json, parse_edge_list, serialize_edge_list
from .oracles import exact_oriented_chromatic, exact_two_dipath
from .pipeline import colour_surface_graph
from .targets import (
    FullTarget,
    build_restricted,
    failure_probability_bound,
    minimal_full_N,
    sample_full,
    verify_full,
)

_CAP_ERRORS = (CapExceeded, BudgetExceeded, TooLarge, CapacityExceeded, ArityExceeded)
_GENUS_ERRORS = (GenusAssumptionViolated, DegeneracyViolation)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj) -> None:
    sys.stdout.write(_dumps(obj) + "\n")


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    return int(os.environ.get("ORICHROME_SEED", "0"))


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_edge_list(text)


# -- subcommand bodies ---------------------------------------------------------


def _cmd_solve(args) -> int:
    g = _read_graph(args.input)
    if args.which == "chio":
        res = exact_oriented_chromatic(g, k_max=args.k_max)
        if res is None:
            _emit({"which": "chio", "value": None, "k_max": args.k_max})
            return 0
        report = {
            "which": "chio",
            "value": res.value,
            "witness": {str(v): c for v, c in res.witness.items()},
            "target_arcs": res.target.arcs(),
        }
    else:
        res = exact_two_dipath(g)
        report = {
            "which": "chi2",
            "value": res.value,
            "witness": {str(v): c for v, c in res.witness.items()},
        }
    _emit(report)
    return 0


def _cmd_full(args) -> int:
    if args.action == "sample":
        seed = _resolve_seed(args.seed)
        t = sample_full(args.k, args.d, seed=seed)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(t.to_json() + "\n")
        _emit(
            {
                "action": "sample",
                "k": t.k,
                "d": t.d,
                "N": t.N,
                "certified": t.certified,
                "failure_bound": failure_probability_bound(t.k, t.d, t.N),
                "out": args.out,
            }
        )
        return 0
    if args.action == "verify":
        with open(args.target, "r", encoding="utf-8") as fh:
            t = FullTarget.from_json(fh.read())
        res = verify_full(t)
        witness = None
        if res is not True:
            witness = {
                "class": res.class_index,
                "vertices": list(res.vertices),
                "signs": list(res.signs),
            }
        _emit({"action": "verify", "verified": res is True, "witness": witness})
        return 0
    n = minimal_full_N(args.k, args.d, n_cap=args.n_cap)
    _emit({"action": "minimal", "k": args.k, "d": args.d, "n_cap": args.n_cap, "N": n})
    return 0


def _cmd_colour(args) -> int:
    g = _read_graph(args.input)
    seed = _resolve_seed(args.seed)
    target = None
    if args.target_file:
        with open(args.target_file, "r", encoding="utf-8") as fh:
            base = FullTarget.from_json(fh.read())
        free = args.free_classes if args.free_classes is not None else base.k - 1
        target = build_restricted(base, free)
    res = colour_surface_graph(g, args.g, target=target, seed=seed, debug=args.debug)
    sys.stdout.write(res.to_json() + "\n")
    return 0


def _cmd_bounds(args) -> int:
    sys.stdout.write(bounds_table(args.g_min, args.g_max))
    return 0


def _cmd_gen(args) -> int:
    params = {}
    for key in ("n", "rows", "cols", "density"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    g = generate(args.kind, seed=_resolve_seed(args.seed), **params)
    if args.format == "json":
        sys.stdout.write(graph_to_json(g) + "\n")
    else:
        sys.stdout.write(serialize_edge_list(g))
    return 0


def _cmd_selftest(args) -> int:
    results = run_all(_resolve_seed(args.seed), stream=sys.stdout)
    return 0 if all(r.passed for r in results) else 1


# -- parser ----------------------------------------------------------------


def _add_seed(p) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: ORICHROME_SEED)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orichrome",
        description="Oriented colouring toolkit: exact solvers, target samplers, surface pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact oriented or distance-2 chromatic number")
    p.add_argument("which", choices=("chio", "chi2"))
    p.add_argument("input", help="graph file (edge list or JSON)")
    p.add_argument("--k-max", type=int, default=7, dest="k_max")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("full", help="sample, verify, or minimize multipartite targets")
    act = p.add_subparsers(dest="action", required=True)
    ps = act.add_parser("sample")
    ps.add_argument("k", type=int)
    ps.add_argument("d", type=int)
    ps.add_argument("--out", default=None, help="write the certified target here")
    _add_seed(ps)
    pv = act.add_parser("verify")
    pv.add_argument("target", help="target JSON file")
    pm = act.add_parser("minimal")
    pm.add_argument("k", type=int)
    pm.add_argument("d", type=int)
    pm.add_argument("--n-cap", type=int, default=6, dest="n_cap")
    p.set_defaults(fn=_cmd_full)

    p = sub.add_parser("colour", help="surface colouring pipeline")
    p.add_argument("input", help="graph file (edge list or JSON)")
    p.add_argument("--g", type=int, required=True, help="asserted Euler genus bound")
    p.add_argument("--target-file", default=None, help="use a stored target instead of lazy")
    p.add_argument("--free-classes", type=int, default=None)
    p.add_argument("--debug", action="store_true", help="check every replay step")
    _add_seed(p)
    p.set_defaults(fn=_cmd_colour)

    p = sub.add_parser("bounds", help="CSV table of genus bounds")
    p.add_argument("g_min", type=int)
    p.add_argument("g_max", type=int)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("gen", help="emit a generated graph")
    p.add_argument(
        "kind",
        choices=(
            "complete-tournament",
            "transitive-tournament",
            "directed-cycle",
            "toroidal-grid",
            "stacked-triangulation",
            "planar-sparse",
            "random-oriented",
        ),
    )
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    _add_seed(p)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    _add_seed(p)
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _GENUS_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except _CAP_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OrichromeError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
