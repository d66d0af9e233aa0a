"""Command line interface: ``conlat eval|con|enumerate|census|verify|cfi``.

Exit codes: 0 success, 1 verification failure, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .canonical import canonical_code
from .census import census, cfi_check, default_threads
from .congruence import all_congruences, congruence_lattice
from .dsl import evaluate
from .enumeration import max_n, write_jsonl
from .errors import LatticeError
from .lattice import Lattice, to_dot, to_json


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def describe(L: Lattice) -> str:
    lines = [f"elements: {L.n}"]
    if L.names:
        lines.append("names: " + " ".join(L.label(x) for x in range(L.n)))
    lines.append("covers: " + " ".join(f"{L.label(a)}<{L.label(b)}" for a, b in L.covers))
    lines.append(f"code: {canonical_code(L).hex()}" if L.n <= 16 else "code: (too large)")
    return "\n".join(lines)


def cmd_eval(args, out):
    L = evaluate(args.expr)
    if args.dot:
        out.write(to_dot(L))
    elif args.json:
        out.write(_dump({"format": 1, **to_json(L)}) + "\n")
    else:
        out.write(describe(L) + "\n")
    return 0


def _labelled_blocks(L, theta):
    return " ".join("{" + ",".join(L.label(x) for x in b) + "}" for b in theta.blocks())


def cmd_con(args, out):
    L = evaluate(args.expr)
    congs = all_congruences(L)
    if args.list:
        for theta in congs:
            out.write(_labelled_blocks(L, theta) + "\n")
    elif args.lattice:
        C = congruence_lattice(L, congs)
        if args.dot:
            out.write(to_dot(C, name="Con"))
        else:
            out.write(_dump({"format": 1, **to_json(C)}) + "\n")
    else:
        out.write(f"{len(congs)}\n")
    return 0


def cmd_enumerate(args, out):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            count = write_jsonl(args.n, fh)
        out.write(f"wrote {count} lattices to {args.out}\n")
    else:
        write_jsonl(args.n, out)
    return 0


def cmd_census(args, out):
    record = census(args.n, threads=args.threads or default_threads(), cap=args.cap)
    if args.json:
        out.write(_dump(record.to_json()) + "\n")
    elif args.csv:
        out.write(record.to_csv())
    else:
        out.write(f"n = {record.n}: {record.total} lattices\n")
        for k, m in sorted(record.histogram.items(), reverse=True):
            out.write(f"  {k:>6} congruences: {m}\n")
    return 0


def cmd_verify(args, out):
    from .verify import verify_paper

    report = verify_paper(args.max_n)
    if args.json:
        out.write(_dump(report.to_json(timings=args.timings)) + "\n")
    else:
        out.write(report.to_text(timings=args.timings))
    return 0 if report.ok else 1


def cmd_cfi(args, out):
    mode = args.mode or ("exhaustive" if args.n <= max_n() else "construct")
    witnesses = cfi_check(args.k, args.n, mode)
    if not witnesses:
        if mode == "construct" and args.k != 1:
            out.write(f"({args.k},{args.n},{args.n}): no construction known\n")
        else:
            out.write(f"({args.k},{args.n},{args.n}): not representable\n")
        return 0
    out.write(f"({args.k},{args.n},{args.n}): representable, {len(witnesses)} witness(es)\n")
    for w in witnesses[:args.limit]:
        label = w.expr if w.expr else w.code.hex()
        out.write(f"  {label}  filters={w.filters} ideals={w.ideals}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conlat", description="Congruences of finite lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="build a lattice from an expression")
    e.add_argument("expr")
    fmt = e.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("con", help="congruences of a lattice")
    c.add_argument("expr")
    what = c.add_mutually_exclusive_group()
    what.add_argument("--count", action="store_true", help="number of congruences (default)")
    what.add_argument("--list", action="store_true", help="every congruence as blocks")
    what.add_argument("--lattice", action="store_true", help="Con(L) as JSON, or DOT with --dot")
    c.add_argument("--dot", action="store_true")
    c.set_defaults(func=cmd_con)

    en = sub.add_parser("enumerate", help="all n-element lattices as JSON lines")
    en.add_argument("n", type=int)
    en.add_argument("--out")
    en.set_defaults(func=cmd_enumerate)

    ce = sub.add_parser("census", help="histogram of congruence counts over n-element lattices")
    ce.add_argument("n", type=int)
    fmt = ce.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    ce.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
    ce.add_argument("--cap", type=int, default=64, help="witness codes kept per count")
    ce.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--max-n", type=int, default=7)
    v.add_argument("--json", action="store_true")
    v.add_argument("--timings", action="store_true", help="include runtimes (JSON is then not reproducible)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("cfi", help="is (k, n, n) represented by an n-element lattice?")
    f.add_argument("k", type=int)
    f.add_argument("n", type=int)
    mode = f.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", dest="mode", action="store_const", const="exhaustive")
    mode.add_argument("--construct", dest="mode", action="store_const", const="construct")
    f.add_argument("--limit", type=int, default=10, help="witnesses to print")
    f.set_defaults(func=cmd_cfi, mode=None)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except LatticeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
