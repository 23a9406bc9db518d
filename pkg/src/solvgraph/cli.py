"""Command-line interface.

Algebras are named by compact specs: sl2@3, gl2@5, t3@2, so3@5, w3, or
file:PATH for a structure-constants file.  All commands are deterministic;
identical invocations produce byte-identical output regardless of the
thread count.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import formulas, graph, liealg, solv

_SPEC_RE = re.compile(r"^(sl|gl|t|so)(\d+)@(\d+)$")


@dataclass
class AlgebraSpec:
    kind: str
    n: int | None
    p: int | None
    path: str | None


def parse_spec(text: str) -> AlgebraSpec:
    if text == "w3":
        return AlgebraSpec("w3", None, 2, None)
    if text.startswith("file:"):
        path = text[5:]
        if not path:
            raise ValueError("empty path in file: spec")
        return AlgebraSpec("file", None, None, path)
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(
            f"cannot parse algebra spec {text!r}; expected forms like "
            "sl2@3, gl2@5, t3@2, so3@5, w3, file:PATH")
    kind, n, p = m.group(1), int(m.group(2)), int(m.group(3))
    if n < 1:
        raise ValueError(f"matrix size must be positive in {text!r}")
    return AlgebraSpec(kind, n, p, None)


_BUILTINS = {
    "sl": liealg.make_sl,
    "gl": liealg.make_gl,
    "t": liealg.make_t,
    "so": liealg.make_so,
}


def load_algebra(spec: AlgebraSpec) -> liealg.LieAlgebra:
    if spec.kind == "w3":
        return liealg.make_w3(2)
    if spec.kind == "file":
        return liealg.from_file(spec.path)
    return _BUILTINS[spec.kind](spec.n, spec.p)


def _fmt_bool(b) -> str:
    return "true" if b else "false"


def _fmt_tristate(b) -> str:
    return "n/a" if b is None else _fmt_bool(b)


def _coords(vec) -> str:
    return "(" + ",".join(str(c) for c in vec) + ")"


def _print_kv(pairs):
    for k, v in pairs:
        print(f"{k}={v}")


def cmd_info(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    cache = solv.SolvCache()
    sol = solv.sol_of_algebra(L, cache, force=args.force)
    rad = liealg.radical(L, force=args.force)
    s_lie, _ = solv.is_s_lie(L, cache, force=args.force)
    solvable = liealg.is_solvable(L)
    if args.format == "json":
        print(json.dumps({
            "algebra": L.name, "p": L.field.p, "dim": L.dim, "order": L.size,
            "solvable": solvable, "sol_size": len(sol),
            "radical_dim": rad.dim, "radical_size": rad.size, "s_lie": s_lie,
        }, separators=(",", ":")))
    else:
        _print_kv([
            ("algebra", L.name), ("p", L.field.p), ("dim", L.dim),
            ("order", L.size), ("solvable", _fmt_bool(solvable)),
            ("sol_size", len(sol)), ("radical_dim", rad.dim),
            ("radical_size", rad.size), ("s_lie", _fmt_bool(s_lie)),
        ])
    return 0


def cmd_graph(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    G = graph.build(L, threads=args.threads, force=args.force)
    if args.dot:
        graph.export_dot(G, args.dot)
    if args.json:
        graph.export_json(G, args.json)
    if args.csv:
        graph.export_degrees_csv(G, args.csv)
    ncomp = len(graph.components(G))
    print(f"vertices={G.vertex_count} edges={G.edge_count} components={ncomp}")
    return 0


def cmd_degrees(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    G = graph.build(L, threads=args.threads, force=args.force)
    seq = graph.degree_sequence(G)
    if args.format == "json":
        print(json.dumps({"degrees": [[d, m] for d, m in seq.items()]},
                         separators=(",", ":")))
    else:
        for d, m in seq.items():
            print(f"{d},{m}")
    return 0


def cmd_conjecture(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    res = solv.conjecture_sum(L, force=args.force)
    if args.format == "json":
        print(json.dumps({
            "sum": res.total, "order": res.order,
            "divisible": res.divisible, "quotient": str(res.quotient),
        }, separators=(",", ":")))
    else:
        yn = "yes" if res.divisible else "no"
        print(f"sum={res.total} order={res.order} divisible={yn} quotient={res.quotient}")
    return 0


def cmd_verify(args) -> int:
    spec = parse_spec(args.algebra)
    if spec.kind not in ("sl", "gl") or spec.n != 2:
        raise ValueError("verify supports only the sl2@q and gl2@q families")
    report = formulas.verify(f"{spec.kind}2", spec.p, threads=args.threads,
                             force=args.force)
    print(report.to_json() if args.format == "json" else report.text())
    return 0 if report.passed else 1


def cmd_complement(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    G = graph.build(L, threads=args.threads, force=args.force)
    parts = graph.complement_components(G)
    print(f"components={len(parts)}")
    return 0


def cmd_solvabilizer(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    try:
        coords = tuple(int(c) for c in args.element.split(","))
    except ValueError:
        raise ValueError(f"cannot parse element coordinates {args.element!r}") from None
    if len(coords) != L.dim:
        raise ValueError(f"expected {L.dim} coordinates, got {len(coords)}")
    x = tuple(c % L.field.p for c in coords)
    cache = solv.SolvCache()
    members = solv.solvabilizer(L, x, cache, force=args.force)
    rep = solv.divisibility_report(L, x, cache, force=args.force)
    if args.format == "json":
        print(json.dumps({
            "element": list(x), "size": rep.sol_size, "members": list(members),
            "p_divides": rep.p_divides, "sol_size": rep.sol_of_algebra_size,
            "sol_divides": rep.sol_divides,
            "centralizer_size": rep.centralizer_size,
            "centralizer_divides": rep.centralizer_divides,
            "coset_closed": rep.coset_closed,
        }, separators=(",", ":")))
    else:
        _print_kv([
            ("element", _coords(x)), ("size", rep.sol_size),
            ("members", " ".join(str(m) for m in members)),
            ("p_divides", _fmt_bool(rep.p_divides)),
            ("sol_size", rep.sol_of_algebra_size),
            ("sol_divides", _fmt_tristate(rep.sol_divides)),
            ("centralizer_size", rep.centralizer_size),
            ("centralizer_divides", _fmt_tristate(rep.centralizer_divides)),
            ("coset_closed", _fmt_bool(rep.coset_closed)),
        ])
    return 0


def cmd_slie(args) -> int:
    L = load_algebra(parse_spec(args.algebra))
    verdict, witness = solv.is_s_lie(L, force=args.force)
    if args.format == "json":
        payload = {"s_lie": verdict}
        if witness is not None:
            x, a, b = witness
            payload["witness"] = {"x": list(x), "a": list(a), "b": list(b)}
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(f"s_lie={_fmt_bool(verdict)}")
        if witness is not None:
            x, a, b = witness
            print(f"witness_x={_coords(x)}")
            print(f"witness_a={_coords(a)}")
            print(f"witness_b={_coords(b)}")
    return 0


def _add_common(sub, threads=False, formats=("text", "json")):
    sub.add_argument("algebra", help="algebra spec, e.g. sl2@3, gl2@5, w3, file:PATH")
    sub.add_argument("--force", action="store_true",
                     help="override the enumeration size cap")
    sub.add_argument("--format", choices=formats, default="text")
    if threads:
        sub.add_argument("--threads", type=int, default=1,
                         help="worker threads for the graph build")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solvgraph",
        description="Solvable graphs and solvabilizers of Lie algebras over F_p.")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("info", help="order, solvability, sol(L), radical, S-property")
    _add_common(s)
    s.set_defaults(func=cmd_info)

    s = subs.add_parser("graph", help="build the solvable graph and export it")
    _add_common(s, threads=True)
    s.add_argument("--dot", metavar="PATH", help="write a Graphviz DOT file")
    s.add_argument("--json", metavar="PATH", help="write a JSON graph file")
    s.add_argument("--csv", metavar="PATH", help="write a degree,multiplicity CSV")
    s.set_defaults(func=cmd_graph)

    s = subs.add_parser("degrees", help="print the degree sequence as CSV rows")
    # text output is already CSV rows; accept the explicit spelling too
    _add_common(s, threads=True, formats=("text", "json", "csv"))
    s.set_defaults(func=cmd_degrees)

    s = subs.add_parser("conjecture", help="sum of solvabilizer sizes and divisibility")
    _add_common(s)
    s.set_defaults(func=cmd_conjecture)

    s = subs.add_parser("verify", help="check a built graph against the closed forms")
    _add_common(s, threads=True)
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("complement", help="component count of the complement graph")
    _add_common(s, threads=True)
    s.set_defaults(func=cmd_complement)

    s = subs.add_parser("solvabilizer", help="solvabilizer of one element")
    _add_common(s)
    s.add_argument("--element", required=True,
                   help="comma-separated coordinates in constructor basis order")
    s.set_defaults(func=cmd_solvabilizer)

    s = subs.add_parser("slie", help="is every solvabilizer a subalgebra?")
    _add_common(s)
    s.set_defaults(func=cmd_slie)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, liealg.CapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
