"""Command-line entry point.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage
error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Any, Sequence, TextIO

from . import formats
from .automorphism import BoundExceededError, automorphisms, matching_involutions
from .classify import prime_test
from .graph import SimpleGraph
from .product import Factorization, product, verify_factorization
from .search import SearchBudget, factor
from .union import NonSimpleUnionError, build_union, diamond_condition

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 with usage, as argparse does, but never 1
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> SimpleGraph:
    return formats.parse_graph(_read_text(path))


def _dump(obj: Any, out: TextIO) -> None:
    out.write(json.dumps(obj, default=_json_default) + "\n")


def _json_default(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _budget(args: argparse.Namespace) -> SearchBudget:
    defaults = SearchBudget()
    return SearchBudget(
        max_vertices=args.max_vertices or defaults.max_vertices,
        node_limit=args.budget_nodes or defaults.node_limit,
        time_limit_ms=args.timeout or defaults.time_limit_ms,
    )


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=None, help="oracle backtracking node limit")
    p.add_argument("--timeout", type=int, default=None, help="oracle wall-clock limit in ms")
    p.add_argument("--max-vertices", type=int, default=None, help="largest graph the oracle will search")


def _certificate_dict(f: Factorization) -> dict[str, Any]:
    return {"G": formats.graph_to_dict(f.g), **f.to_dict()}


def cmd_verify(args: argparse.Namespace) -> int:
    g, h, k = (_load(p) for p in (args.A, args.B, args.C))
    result = verify_factorization(g, h, k, verbose=args.verbose)
    if isinstance(result, Factorization):
        print("verified: A = BC", file=sys.stderr)
        return EXIT_OK
    print(f"not a factorization: {result}", file=sys.stderr)
    if args.verbose and result.residual is not None:
        print(f"residual BC - A:\n{result.residual}", file=sys.stderr)
    return EXIT_NEGATIVE


def cmd_product(args: argparse.Namespace) -> int:
    _dump(product(_load(args.H), _load(args.K)).to_dict(), sys.stdout)
    return EXIT_OK


def cmd_diamond(args: argparse.Namespace) -> int:
    cu = build_union(_load(args.H), _load(args.K))
    try:
        report = diamond_condition(cu)
    except NonSimpleUnionError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    _dump(
        {
            "diamond": report.ok,
            "violations": [
                {
                    "u": v.u,
                    "v": v.v,
                    "blue_red": v.blue_red,
                    "red_blue": v.red_blue,
                    "blue_red_middles": v.blue_red_middles,
                    "red_blue_middles": v.red_blue_middles,
                }
                for v in report.violations
            ],
        },
        sys.stdout,
    )
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_factor(args: argparse.Namespace) -> int:
    outcome = factor(_load(args.G), _budget(args), method=args.method, find_all=args.all)
    _dump([c.to_dict() for c in outcome.certificates], sys.stdout)
    summary = {"verdict": outcome.verdict, "method": outcome.stats.get("method")}
    if args.stats:
        summary["stats"] = outcome.stats
    elif "trail" in outcome.stats:
        summary["trail"] = outcome.stats["trail"]
    _dump(summary, sys.stderr)
    return {"factorable": EXIT_OK, "not-factorable": EXIT_NEGATIVE}.get(outcome.verdict, EXIT_EXHAUSTED)


def cmd_classify(args: argparse.Namespace) -> int:
    verdict = prime_test(_load(args.G), _budget(args))
    _dump(verdict.to_dict(), sys.stdout)
    if verdict.status == "unknown":
        return EXIT_EXHAUSTED
    return EXIT_OK if verdict.is_prime else EXIT_NEGATIVE


def cmd_aut(args: argparse.Namespace) -> int:
    g = _load(args.G)
    try:
        if args.involutions:
            perms = [m.perm for m in matching_involutions(g, max_vertices=args.max_vertices)]
        else:
            perms = automorphisms(g, max_vertices=args.max_vertices)
    except BoundExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    for p in perms:
        print(p.cycle_notation())
    print(f"{len(perms)} permutation(s)", file=sys.stderr)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    from .constructions import NotFactorableError, factor_doubled_forest, factor_grid, factor_torus

    try:
        if args.family == "grid":
            f = factor_grid(args.N, args.M).factorization
        elif args.family == "torus":
            f = factor_torus(args.N, args.M).factorization
        else:
            f = factor_doubled_forest(_load(args.F))
    except NotFactorableError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NEGATIVE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.dot:
        sys.stdout.write(formats.colored_to_dot(f.h, f.k))
    else:
        _dump(_certificate_dict(f), sys.stdout)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    from .census import CENSUS_MAX_N, run_census

    if not 1 <= args.N <= CENSUS_MAX_N:
        print(f"error: census supports 1 <= N <= {CENSUS_MAX_N}", file=sys.stderr)
        return EXIT_USAGE
    counts: Counter[str] = Counter()
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for row in run_census(args.N, _budget(args), with_stats=args.stats, up_to=args.up_to):
            counts[f"factor:{row['factor']}"] += 1
            counts[f"prime:{row['prime']}"] += 1
            out.write(json.dumps(row, default=_json_default, sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    total = counts["factor:factorable"] + counts["factor:not-factorable"] + counts["factor:exhausted"]
    print(f"{total} graph(s)", file=sys.stderr)
    for key in sorted(counts):
        print(f"  {key}: {counts[key]}", file=sys.stderr)
    return EXIT_EXHAUSTED if counts["factor:exhausted"] else EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    g = _load(args.input)
    if args.to == "json":
        sys.stdout.write(formats.to_json(g) + "\n")
    elif args.to == "graph6":
        sys.stdout.write(formats.to_graph6(g) + "\n")
    else:
        sys.stdout.write(formats.to_dot(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphfactor", description="Matrix-product factorization of graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check A = BC")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("C")
    p.add_argument("--verbose", action="store_true", help="print the full residual on failure")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("product", help="print the product digraph HK")
    p.add_argument("H")
    p.add_argument("K")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("diamond", help="check the diamond condition of H (+) K")
    p.add_argument("H")
    p.add_argument("K")
    p.set_defaults(func=cmd_diamond)

    p = sub.add_parser("factor", help="search for a factorization")
    p.add_argument("G")
    p.add_argument("--all", action="store_true", help="return every certificate (oracle)")
    p.add_argument("--method", choices=("auto", "oracle", "matching"), default="auto")
    p.add_argument("--stats", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("classify", help="prime-graph verdict")
    p.add_argument("G")
    _add_budget(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("aut", help="list automorphisms in cycle notation")
    p.add_argument("G")
    p.add_argument("--involutions", action="store_true", help="only fixed-point-free, fixed-edge-free involutions")
    p.add_argument("--max-vertices", type=int, default=12)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("construct", help="closed-form factorizations")
    csub = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    for fam in ("grid", "torus"):
        q = csub.add_parser(fam)
        q.add_argument("N", type=int)
        q.add_argument("M", type=int)
        q.add_argument("--dot", action="store_true", help="emit the two-coloured union as DOT")
        q.set_defaults(func=cmd_construct)
    q = csub.add_parser("double-forest")
    q.add_argument("F")
    q.add_argument("--dot", action="store_true", help="emit the two-coloured union as DOT")
    q.set_defaults(func=cmd_construct)

    p = sub.add_parser("census", help="classify all connected graphs on N vertices")
    p.add_argument("N", type=int)
    p.add_argument("--out", default=None, help="write JSON lines here instead of stdout")
    p.add_argument("--stats", action="store_true", help="include search statistics")
    p.add_argument("--up-to", action="store_true", help="include every size from 1 to N")
    _add_budget(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("convert", help="re-encode a graph (input: JSON or graph6)")
    p.add_argument("to", choices=("json", "graph6", "dot"))
    p.add_argument("input")
    p.set_defaults(func=cmd_convert)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
