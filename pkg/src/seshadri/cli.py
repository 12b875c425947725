"""Command line entry point: ``seshadri <command> ...``.

Every command prints JSON (or writes it to ``--output``).  The exit status is
1 when a consistency flag is raised or a verification fails, 2 on invalid
input, 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, experiments, lattice, surface, symplectic
from .core import gram_from_period, period_matrix_from_json
from .errors import SeshadriError


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(payload, output: str | None) -> None:
    text = json.dumps(payload, indent=2, default=_default)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def _load_tau(path: str):
    with open(path) as fh:
        return period_matrix_from_json(json.load(fh))


def cmd_svp(args) -> int:
    gram = gram_from_period(_load_tau(args.input))
    if args.oracle:
        res = lattice.brute_force_shortest(gram, args.box)
    else:
        res = lattice.shortest_vector(gram)
    _emit(res.to_json(), args.output)
    return 0


def cmd_bounds(args) -> int:
    tau = _load_tau(args.input) if args.input else None
    rep = bounds.bounds_report(tau, args.genus, args.gonality, args.jacobian)
    _emit(rep.to_json(), args.output)
    return 1 if rep.consistency_flags else 0


def cmd_analyze(args) -> int:
    tau = _load_tau(args.input)
    svp = lattice.shortest_vector(gram_from_period(tau))
    rep = bounds.bounds_report(tau, tau.g, args.gonality, args.jacobian)
    _emit({"svp": svp.to_json(), "bounds": rep.to_json()}, args.output)
    return 1 if rep.consistency_flags else 0


def cmd_surface(args) -> int:
    _emit(surface.surface_summary(args.genus, args.gonality), args.output)
    return 0


def cmd_blowup(args) -> int:
    reports = symplectic.run_all(args.dim, args.lam, args.eta, args.delta, args.samples, args.tol,
                                 args.seed, args.mode)
    _emit([r.to_json() for r in reports], args.output)
    return 0 if all(r.passed for r in reports) else 1


def cmd_search(args) -> int:
    res = experiments.search_max_min_period(args.genus, args.iters, args.seed, args.spread)
    _emit(res.to_json(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seshadri", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--output", help="write JSON here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("svp", cmd_svp, "minimal period of a period matrix")
    p.add_argument("--input", required=True, help="period matrix JSON")
    p.add_argument("--oracle", action="store_true", help="use the brute-force box scan")
    p.add_argument("--box", type=int, default=None, help="box radius for --oracle (default: certified)")

    p = add("bounds", cmd_bounds, "Seshadri and period bounds")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--gonality", type=int)
    p.add_argument("--jacobian", action="store_true")
    p.add_argument("--input", help="optional period matrix JSON")

    p = add("analyze", cmd_analyze, "svp and bounds for one period matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--gonality", type=int)
    p.add_argument("--jacobian", action="store_true")

    p = add("surface", cmd_surface, "intersection numbers on C x C")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--gonality", type=int)

    p = add("blowup", cmd_blowup, "verify the radial blow-up model")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--lambda", dest="lam", type=float, default=0.8)
    p.add_argument("--eta", type=float, default=0.05)
    p.add_argument("--delta", type=float)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["analytic", "fd"], default="analytic")

    p = add("search", cmd_search, "hill-climb for large m(A)")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spread", type=float, default=1.0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SeshadriError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
