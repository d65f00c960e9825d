"""Command-line entry point.

Exit codes: 0 every check passed, 1 a check failed, 2 usage error,
3 invalid input such as a cyclic relation list or a non-commuting module.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .cohomology import check_resolution_exact, euler_check, hom_complex
from .errors import MobiusError
from .galois import (
    ENUMERATION_CAP,
    GaloisConnection,
    adjunction_dim_check,
    enumerate_connections,
    rota_classical_check,
    rota_ext_check,
    rota_inversion_check,
    verify_connection,
)
from .incidence import lower_inversion, mobius_recursive, upper_inversion
from .report import Report
from .selftest import DEFAULT_SEED, DEFAULT_TRIALS, selftest

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3
POSET_CAP = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed_default() -> int:
    raw = os.environ.get("MOBIUS_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        print(f"mobius: error: MOBIUS_SEED={raw!r} is not an integer", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mobius", description="Exact Möbius inversion and Möbius cohomology on finite posets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(sp):
        sp.add_argument("--format", choices=("table", "json"), default="table")
        return sp

    def with_cap(sp, default=POSET_CAP):
        sp.add_argument("--max-size", type=int, default=default, metavar="N")
        return sp

    sp = with_cap(with_format(sub.add_parser("mobius", help="print the Möbius function of a poset")))
    sp.add_argument("poset")

    sp = with_cap(with_format(sub.add_parser("invert", help="Möbius inversion of an integer function")))
    sp.add_argument("poset")
    sp.add_argument("function")
    sp.add_argument("--lower", action="store_true", help="invert over down-sets instead of up-sets")

    sp = with_format(sub.add_parser("cohomology", help="Ext dimensions of an indicator against a module"))
    sp.add_argument("module")
    target = sp.add_mutually_exclusive_group()
    target.add_argument("--at", metavar="ELEMENT")
    target.add_argument("--spread", metavar="A,B,...")

    sp = with_format(sub.add_parser("euler-check", help="Möbius inversion of dims against Euler characteristics"))
    sp.add_argument("module")

    sp = with_format(sub.add_parser("resolution-check", help="exactness of the standard cofree resolution"))
    sp.add_argument("module")

    sp = with_cap(with_format(sub.add_parser("galois-check", help="check a Galois connection and identities")))
    sp.add_argument("P")
    sp.add_argument("Q")
    sp.add_argument("--f", required=True, metavar="F.json")
    sp.add_argument("--g", required=True, metavar="G.json")
    which = sp.add_mutually_exclusive_group()
    which.add_argument("--rota", action="store_true")
    which.add_argument("--rota-inversion", metavar="FN.json")
    which.add_argument("--rota-ext", metavar="MODULE.json")
    which.add_argument("--adjunctions", nargs=2, metavar=("MP.json", "MQ.json"))
    sp.add_argument("--at", metavar="ELEMENT", help="restrict --rota-ext to one element of P")

    sp = with_cap(
        with_format(sub.add_parser("enumerate-galois", help="list every Galois connection P <-> Q")),
        ENUMERATION_CAP,
    )
    sp.add_argument("P")
    sp.add_argument("Q")

    sp = with_format(sub.add_parser("selftest", help="run the seeded random-property battery"))
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sp.add_argument("--jobs", type=int, default=1)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "galois-check" and args.at is not None and not args.rota_ext:
        parser.error("--at is only meaningful together with --rota-ext")
    if args.command == "selftest":
        if args.seed is None:
            args.seed = _seed_default()
        if args.trials < 0 or args.jobs < 1:
            parser.error("--trials must be >= 0 and --jobs >= 1")
    return args


def _table(header, rows) -> str:
    rows = [tuple(str(c) for c in header)] + [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _emit(args, data: dict, header, rows) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(_table(header, rows))


def _emit_report(args, report: Report) -> int:
    print(report.to_json() if args.format == "json" else report.to_table())
    return EXIT_PASS if report.ok else EXIT_FAIL


def _poset(path, cap):
    return io.poset_from_json(io.read_json(path), max_size=cap)


def _cmd_mobius(args) -> int:
    p = _poset(args.poset, args.max_size)
    rows = mobius_recursive(p).table()
    data = {"elements": list(p.elements), "mu": [{"a": a, "b": b, "mu": m} for a, b, m in rows]}
    _emit(args, data, ("a", "b", "mu"), rows)
    return EXIT_PASS


def _cmd_invert(args) -> int:
    p = _poset(args.poset, args.max_size)
    f = io.function_from_json(io.read_json(args.function), p)
    inv = lower_inversion(f) if args.lower else upper_inversion(f)
    kind = "lower" if args.lower else "upper"
    data = {"inversion": kind, "values": {a: inv[a] for a in p}}
    _emit(args, data, ("element", "f", kind), [(a, f[a], inv[a]) for a in p])
    return EXIT_PASS


def _cmd_cohomology(args) -> int:
    N = io.module_from_json(io.read_json(args.module))
    p = N.poset
    if args.spread is not None:
        Z = [z.strip() for z in args.spread.split(",") if z.strip()]
        for z in Z:
            p.index(z)
        targets = [(",".join(p.sort(Z)), Z)]
    elif args.at is not None:
        p.index(args.at)
        targets = [(args.at, [args.at])]
    else:
        targets = [(a, [a]) for a in p]
    results = [(label, hom_complex(Z, N).cohomology()) for label, Z in targets]
    length = max((len(r.betti) for _, r in results), default=0)
    data = {
        "field": str(N.field),
        "results": [{"target": label, "betti": list(r.betti), "euler": r.euler} for label, r in results],
    }
    header = ("target",) + tuple(f"Ext^{d}" for d in range(length)) + ("chi",)
    rows = [(label,) + r.padded(length) + (r.euler,) for label, r in results]
    _emit(args, data, header, rows)
    return EXIT_PASS


def _cmd_euler_check(args) -> int:
    return _emit_report(args, euler_check(io.module_from_json(io.read_json(args.module))))


def _cmd_resolution_check(args) -> int:
    N = io.module_from_json(io.read_json(args.module))
    result = check_resolution_exact(N)
    report = Report("resolution-check")
    if result.exact:
        for a in N.poset:
            report.add(f"@{a} exact", True, True)
    else:
        a, d = result.failure
        where = "N -> F^0 not injective" if d < 0 else f"not exact at F^{d}"
        report.add(f"@{a} {where}", False, True)
    return _emit_report(args, report)


def _cmd_galois_check(args) -> int:
    P, Q = _poset(args.P, args.max_size), _poset(args.Q, args.max_size)
    f = io.map_from_json(io.read_json(args.f), P, Q)
    g = io.map_from_json(io.read_json(args.g), Q, P)
    report = Report("galois-check")
    ok, witness = verify_connection(f, g)
    report.add("f(a) <= x iff a <= g(x)", ok, True)
    if not ok:
        report.add(f"witness a={witness[0]} x={witness[1]}", False, True)
        return _emit_report(args, report)
    c = GaloisConnection(f, g)
    if args.rota:
        report.extend(rota_classical_check(c), "rota-classical ")
    elif args.rota_inversion:
        n = io.function_from_json(io.read_json(args.rota_inversion), Q)
        report.extend(rota_inversion_check(c, n), "rota-inversion ")
    elif args.rota_ext:
        N = io.module_from_json(io.read_json(args.rota_ext), Q)
        points = [args.at] if args.at is not None else list(P)
        for a in points:
            P.index(a)
            report.extend(rota_ext_check(c, N, a), "rota-ext ")
    elif args.adjunctions:
        M = io.module_from_json(io.read_json(args.adjunctions[0]), P)
        N = io.module_from_json(io.read_json(args.adjunctions[1]), Q)
        report.extend(adjunction_dim_check(f, M, N), "f: ")
        report.extend(adjunction_dim_check(g, N, M), "g: ")
    return _emit_report(args, report)


def _cmd_enumerate_galois(args) -> int:
    P, Q = _poset(args.P, POSET_CAP), _poset(args.Q, POSET_CAP)
    conns = enumerate_connections(P, Q, max_size=args.max_size)
    data = {
        "count": len(conns),
        "connections": [{"f": dict(c.f.values), "g": dict(c.g.values)} for c in conns],
    }

    def show(m, dom):
        return " ".join(f"{a}->{m(a)}" for a in dom)

    rows = [(k, show(c.f, P), show(c.g, Q)) for k, c in enumerate(conns)]
    _emit(args, data, ("#", "f", "g"), rows)
    if args.format == "table":
        print(f"{len(conns)} connection(s)")
    return EXIT_PASS


def _cmd_selftest(args) -> int:
    return _emit_report(args, selftest(args.seed, args.trials, args.jobs))


COMMANDS = {
    "mobius": _cmd_mobius,
    "invert": _cmd_invert,
    "cohomology": _cmd_cohomology,
    "euler-check": _cmd_euler_check,
    "resolution-check": _cmd_resolution_check,
    "galois-check": _cmd_galois_check,
    "enumerate-galois": _cmd_enumerate_galois,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except MobiusError as exc:
        print(f"mobius {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
