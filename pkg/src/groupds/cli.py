"""Command line entry point: ``groupds <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from . import cfsg
from . import structure as st
from .builder import build_auto
from .core import GroupError, read_group
from .gen import KINDS, GenRecipe, SizeError, gen_group, table_text
from .series import composition_series

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_json(path: str, obj) -> None:
    text = json.dumps(obj, indent=2)
    if path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")


def cmd_gen(args) -> int:
    text = Path(args.gens).read_text() if args.gens else None
    table = gen_group(GenRecipe(args.kind, list(args.params), text))
    out = table_text(table)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_build(args) -> int:
    G = read_group(args.table)
    ds, rep = build_auto(G, args.b1, args.b2, seed=args.seed)
    Path(args.output).write_bytes(st.serialize(ds))
    if args.debug_json:
        Path(args.debug_json).write_text(st.dumps_json(ds) + "\n")
    if args.json:
        _write_json(args.json, rep.as_dict())
    print(f"n={rep.n} case={rep.case_tag} words={rep.total_words} "
          f"words/n={rep.words_per_n:.2f} lookups<={rep.lookup_bound}")
    return EXIT_OK


def cmd_query(args) -> int:
    ds = st.deserialize(Path(args.gds).read_bytes())
    n = ds.group_order
    for x in (args.a, args.b):
        if not 1 <= x <= n:
            print(f"element {x} out of range 1..{n}", file=sys.stderr)
            return EXIT_USAGE
    c = st.LookupCounter()
    r = st.multiply(ds, args.a - 1, args.b - 1, c) + 1
    if args.json:
        _write_json(args.json, {"a": args.a, "b": args.b, "product": r, "lookups": c.count})
    print(r)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        ds = st.deserialize(Path(args.gds).read_bytes(), seed=args.seed)
    except st.CorruptionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    result = {"structure": "ok", "n": ds.group_order, "lookup_count": st.lookup_count(ds),
              "word_count": st.word_count(ds)}
    ok = True
    if args.table:
        G = read_group(args.table)
        if G.order != ds.group_order:
            print(f"order mismatch: table {G.order}, structure {ds.group_order}", file=sys.stderr)
            return EXIT_VERIFY
        result["oracle"] = bench_mod.oracle_check(ds, G, seed=args.seed)
        ok = result["oracle"]["pass"]
    result["pass"] = ok
    if args.json:
        _write_json(args.json, result)
    print("pass" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_series(args) -> int:
    G = read_group(args.table)
    cs = composition_series(G, seed=args.seed)
    out = {"n": G.order, "chain_orders": cs.orders, "factor_orders": cs.factor_orders,
           "solvable": cs.is_solvable()}
    print(json.dumps(out))
    if args.json:
        _write_json(args.json, out)
    return EXIT_OK


def cmd_bench(args) -> int:
    data = Path(args.table).read_bytes()
    rep = bench_mod.bench_file(data, source=args.table, b1=args.b1, b2=args.b2, seed=args.seed)
    if args.json:
        _write_json(args.json, rep)
    if rep["error"]:
        print(f"FAIL {rep['error']['kind']}: {rep['error']['message']}")
        return EXIT_DATA if rep["error"]["kind"] in ("parse", "axiom") else EXIT_VERIFY
    sp, lk = rep["space"], rep["lookups"]
    print(f"{'pass' if rep['pass'] else 'FAIL'} n={rep['n']} case={sp['case_tag']} "
          f"words/n={sp['words_per_n']:.2f} lookups={lk['max_observed']}/{lk['bound']} "
          f"oracle={rep['oracle']['mode']}")
    return EXIT_OK if rep["pass"] else EXIT_VERIFY


def cmd_audit(args) -> int:
    rows = cfsg.sweep(args.max_m, args.max_q, printed=args.printed, max_alt=args.max_alt)
    failed = [r for r in rows if not r.passed]
    if args.json:
        _write_json(args.json, cfsg.report(rows))
    for r in failed:
        bad = ", ".join(k for k, v in r.checks.items() if not v)
        print(f"FAIL {r.spec.label}: {bad}")
    print(f"{len(rows) - len(failed)}/{len(rows)} rows pass")
    return EXIT_OK if not failed else EXIT_VERIFY


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="groupds", description="Compact multiplication structures for finite groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a Cayley table for a standard group")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--gens", help="permutation generator file (perm-gens)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    def bounds(q):
        q.add_argument("--b1", type=float, default=5)
        q.add_argument("--b2", type=float, default=5)
        q.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("build", help="build and serialize the structure")
    b.add_argument("table")
    b.add_argument("-o", "--output", required=True)
    bounds(b)
    b.add_argument("--json", help="write the space report as JSON")
    b.add_argument("--debug-json", help="dump every stored table as JSON")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="multiply two elements (1-based ids)")
    q.add_argument("gds")
    q.add_argument("a", type=int)
    q.add_argument("b", type=int)
    q.add_argument("--json")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="re-validate a structure, optionally against its table")
    v.add_argument("gds")
    v.add_argument("--table")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("series", help="print a composition series as JSON")
    s.add_argument("table")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--json")
    s.set_defaults(func=cmd_series)

    be = sub.add_parser("bench", help="build, check against the table and report")
    be.add_argument("table")
    bounds(be)
    be.add_argument("--json")
    be.set_defaults(func=cmd_bench)

    a = sub.add_parser("audit-cfsg", help="check subgroup-order inequalities for simple groups")
    a.add_argument("--max-m", type=int, default=12)
    a.add_argument("--max-q", type=int, default=32)
    a.add_argument("--max-alt", type=int, default=cfsg.MAX_ALT)
    a.add_argument("--printed", action="store_true",
                   help="use the uncorrected tabulated orders")
    a.add_argument("--json")
    a.set_defaults(func=cmd_audit)
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
