"""Command-line interface.

Exit status: 0 when everything passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import bounds, classify, matchpoly, pathtree
from .exact import AlgebraicNumber, ExactError, as_rational, format_rational
from .graph import GraphError, WeightedGraph, load_graph, parse_graph
from .matchpoly import PreconditionError
from .random_graphs import random_graph
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _read_graph(path: str) -> WeightedGraph:
    try:
        if path == "-":
            return parse_graph(sys.stdin.read())
        return load_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except GraphError as exc:
        raise InputError(str(exc)) from exc


def parse_theta(spec: str, g: WeightedGraph) -> AlgebraicNumber:
    """``rat:<p/q>`` for a rational time, ``root:<k>`` for the k-th distinct root (1-based)."""
    kind, _, value = spec.partition(":")
    if kind == "rat":
        try:
            return AlgebraicNumber.from_rational(as_rational(value))
        except (ExactError, ValueError) as exc:
            raise InputError(f"bad rational in theta spec {spec!r}") from exc
    if kind == "root":
        try:
            k = int(value)
        except ValueError as exc:
            raise InputError(f"bad root index in theta spec {spec!r}") from exc
        rs = matchpoly.roots(g)
        if not 1 <= k <= len(rs):
            raise InputError(f"root index {k} out of range (graph has {len(rs)} distinct roots)")
        return rs[k - 1]
    raise InputError(f"theta spec must be rat:<p/q> or root:<k>, got {spec!r}")


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _approx(theta: AlgebraicNumber) -> str:
    return f"{float(theta):.10g}"


# -- commands --------------------------------------------------------------------------------

def cmd_poly(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    mu = matchpoly.matching_polynomial(g)
    coeffs = [format_rational(c) for c in mu.coeffs]
    _emit(args, {"degree": mu.degree, "coefficients": coeffs},
          f"degree {mu.degree}\n[{', '.join(coeffs)}]\n{mu}")
    return EXIT_OK


def cmd_roots(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    found = matchpoly.roots_with_multiplicity(g)
    payload = [
        {"index": k + 1, "root": t.to_json(), "approx": float(t), "multiplicity": m}
        for k, (t, m) in enumerate(found)
    ]
    lines = [
        f"{k + 1}: {_approx(t)}  in ({format_rational(t.lo)}, {format_rational(t.hi)})  multiplicity {m}"
        for k, (t, m) in enumerate(found)
    ]
    _emit(args, {"roots": payload}, "\n".join(lines) if lines else "no roots")
    return EXIT_OK


def _decomposition_text(dec: classify.ThetaDecomposition) -> str:
    def show(s) -> str:
        return "{" + ", ".join(map(str, sorted(s))) + "}"

    lines = [
        f"theta ~ {_approx(dec.theta)}  ({dec.theta})",
        f"m = {dec.m}",
        "classes: " + " ".join(f"{v}:{c.symbol}" for v, c in sorted(dec.classes.items())),
        f"D = {show(dec.D)}",
        f"A = {show(dec.A)}",
        f"N- = {show(dec.N_minus)}",
        f"N+ = {show(dec.N_plus)}",
        f"P = {show(dec.P)}",
        "critical components: " + " ".join(show(c) for c in dec.critical_components),
    ]
    return "\n".join(lines)


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    if g.n == 0:
        raise InputError("graph is empty")
    theta = parse_theta(args.theta, g)
    try:
        dec = classify.decompose(g, theta)
    except classify.InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(args, dec.to_json(), _decomposition_text(dec))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    report = run_suite(g, args.suite, source=args.graph)
    if args.summary:
        counts = ", ".join(f"{k} {v}" for k, v in report.counts().items())
        print(f"suite {args.suite}: {'PASS' if report.passed else 'FAIL'} ({counts})")
        for rec in report.failures():
            print(json.dumps(rec.to_json()))
    else:
        print(json.dumps(report.to_json(include_time=not args.no_time), indent=2))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_random(args: argparse.Namespace) -> int:
    try:
        density = Fraction(args.density)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad density {args.density!r}") from exc
    try:
        g = random_graph(args.n, density, args.seed, args.weighted)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = g.to_json() + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_pathtree(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    if args.root not in g:
        raise InputError(f"vertex {args.root} not in graph")
    try:
        tree = pathtree.build_path_tree(g, args.root, max_nodes=args.max_nodes)
    except pathtree.PathTreeTooLarge as exc:
        raise InputError(str(exc)) from exc
    if args.theta:
        theta = parse_theta(args.theta, g)
        try:
            ann = pathtree.annotate_signs(g, args.root, theta, tree=tree)
        except classify.InvariantViolation as exc:
            print(f"invariant violated: {exc}", file=sys.stderr)
            return EXIT_FAIL
        _emit(args, ann.to_json(), ann.render())
    else:
        _emit(args, pathtree.tree_to_json(tree), pathtree.render_tree(tree))
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    try:
        b, v = bounds.star_bounds_check(g, args.center)
    except PreconditionError as exc:
        raise InputError(str(exc)) from exc
    extreme = bounds.extreme_zero_check(g)
    ok = v.ok and extreme.ok
    payload = {
        **b.to_json(),
        "checks": v.details["checks"],
        "extreme_roots_simple": extreme.status,
        "passed": ok,
    }
    text = "\n".join([
        f"z_G    ~ {_approx(b.z_G)}  ({b.z_G})",
        f"z_star ~ {_approx(b.z_star)}  ({b.z_star})  center {b.center}",
        f"B = {format_rational(b.B)}   r_max = {format_rational(b.r_max)}",
        *(f"{name}: {'pass' if passed else 'FAIL'}" for name, passed in v.details["checks"].items()),
        f"extreme_roots_simple: {extreme.status}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchroots", description="Exact weighted matching polynomial toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, func, graph: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if graph:
            p.add_argument("graph", help="graph JSON file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("poly", "print the matching polynomial", cmd_poly)
    add("roots", "isolate the real roots with multiplicities", cmd_roots)
    p = add("decompose", "classify vertices at a time theta", cmd_decompose)
    p.add_argument("theta", help="rat:<p/q> or root:<k>")
    p = add("verify", "run a verification suite", cmd_verify)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--no-time", action="store_true", help="omit wall time from the JSON report")
    p.add_argument("--summary", action="store_true", help="one-line summary plus failures instead of JSON")
    p = add("random", "generate a reproducible random graph", cmd_random, graph=False)
    p.add_argument("n", type=int)
    p.add_argument("density", nargs="?", default="1/2", help="edge probability, e.g. 0.5 or 1/3")
    p.add_argument("seed", nargs="?", type=int, default=0)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("-o", "--output")
    p = add("pathtree", "print the rooted path tree, optionally with classes", cmd_pathtree)
    p.add_argument("root", type=int)
    p.add_argument("theta", nargs="?", help="rat:<p/q> or root:<k>")
    p.add_argument("--max-nodes", type=int, default=pathtree.PATH_TREE_MAX_NODES)
    p = add("bounds", "largest-root bounds", cmd_bounds)
    p.add_argument("--center", type=int, help="star center among the vertices of largest offset")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
