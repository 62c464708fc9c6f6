"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage
errors (bad cycle words, guards, unknown formats).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import CyclicPermutation, GuardExceeded, enumerate_nc, kreweras, mobius_nc
from .cumulants import numeric_free_cumulant_min, numeric_free_cumulant_recursive
from .loops import ALGORITHMS, compute, equivalence_classes, verify_axioms
from .polynomial import FORMATS, evaluate, serialize, to_json_obj
from .trees import (
    dissection_to_tree,
    enumerate_trees,
    format_tree,
    is_prime,
    parse_tree,
    tree_partition,
    tree_to_dissection,
)


class UsageError(Exception):
    pass


def _sigma(text: str) -> CyclicPermutation:
    try:
        return CyclicPermutation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed rational list {text!r}: {exc}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="looppoly", description="Exact loop polynomials Q_sigma.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    def jobs(p):
        p.add_argument("--jobs", type=_positive, default=1)

    def algo(p):
        p.add_argument("--algo", choices=ALGORITHMS, default="trees")

    p = sub.add_parser("compute", help="loop polynomial of one cycle")
    p.add_argument("--sigma", type=_sigma, required=True)
    p.add_argument("--k", type=int)
    algo(p)
    fmt(p)

    p = sub.add_parser("classes", help="group all cycles of length n by polynomial")
    p.add_argument("-n", type=_positive, required=True)
    algo(p)
    fmt(p)
    jobs(p)

    p = sub.add_parser("verify", help="check the defining axioms for all cycles of length n")
    p.add_argument("-n", type=_positive, required=True)
    algo(p)
    jobs(p)

    p = sub.add_parser("trees", help="list Schroeder trees with n leaves")
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--prime", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("nc", help="non-crossing partitions with Kreweras complement and Moebius value")
    p.add_argument("-n", type=_positive, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate Q_sigma and compare with the free cumulant of indicators")
    p.add_argument("--sigma", type=_sigma, required=True)
    p.add_argument("--x", type=_rationals, required=True)
    p.add_argument("--k", type=int)
    algo(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("dissect", help="tree <-> polygon dissection")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("-n", type=_positive, help="all trees with n >= 2 leaves")
    group.add_argument("--tree", help="a single tree, e.g. '((* *) *)'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def _cmd_compute(args, out) -> int:
    q = compute(args.sigma, args.k, args.algo)
    print(serialize(q, args.format, n=len(args.sigma), sigma=args.sigma.word), file=out)
    return 0


def _cmd_classes(args, out) -> int:
    classes = equivalence_classes(args.n, args.algo, args.jobs)
    if args.format == "json":
        obj = {
            "n": args.n,
            "classes": [
                {"size": len(members), "cycles": [list(s.word) for s in members], **to_json_obj(q)}
                for q, members in classes
            ],
        }
        print(json.dumps(obj), file=out)
        return 0
    for q, members in classes:
        names = " ".join(f"({s})" for s in members)
        print(f"[{len(members)}] {serialize(q, args.format)} : {names}", file=out)
    print(f"CLASSES={len(classes)} CYCLES={sum(len(m) for _, m in classes)}", file=out)
    return 0


def _cmd_verify(args, out) -> int:
    table = None
    if args.algo != "trees":
        from .loops import compute_table

        table = compute_table(args.n, args.algo, args.jobs)
    report = verify_axioms(args.n, table=table, jobs=args.jobs)
    for line in report.lines():
        print(line, file=out)
    return 0 if report.passed else 1


def _cmd_trees(args, out) -> int:
    trees = enumerate_trees(args.n)
    if args.prime:
        if args.n < 2:
            raise UsageError("--prime needs at least 2 leaves")
        trees = [t for t in trees if is_prime(t)]
    rows = []
    for t in trees:
        part = str(tree_partition(t)) if t else ""
        rows.append((format_tree(t), part))
    if args.format == "json":
        print(json.dumps({"leaves": args.n, "trees": [{"tree": s, "partition": p} for s, p in rows]}), file=out)
    else:
        for s, p in rows:
            print(f"{s}\t{p}" if p else s, file=out)
        print(f"COUNT={len(rows)}", file=out)
    return 0


def _cmd_nc(args, out) -> int:
    rows = [(p, kreweras(p), mobius_nc(p)) for p in enumerate_nc(args.n)]
    if args.format == "json":
        obj = {
            "n": args.n,
            "partitions": [
                {"blocks": [list(b) for b in p.blocks], "kreweras": [list(b) for b in k.blocks], "mobius": mu}
                for p, k, mu in rows
            ],
        }
        print(json.dumps(obj), file=out)
    else:
        for p, k, mu in rows:
            print(f"{p}\t{k}\t{mu}", file=out)
        print(f"COUNT={len(rows)}", file=out)
    return 0


def _cmd_eval(args, out) -> int:
    sigma = args.sigma
    support = sorted(sigma.word)
    if len(args.x) != len(support):
        raise UsageError(f"--x needs {len(support)} values, got {len(args.x)}")
    point = dict(zip(support, args.x))
    k = args.k if args.k is not None else support[0]
    if k not in sigma.support:
        raise UsageError(f"k={k} is not in the support of ({sigma})")
    value = evaluate(compute(sigma, k, args.algo), point)
    ordered = args.x == sorted(args.x) and all(0 <= v <= 1 for v in args.x)
    result = {"sigma": list(sigma.word), "x": [str(v) for v in args.x], "value": str(value), "ordered": ordered}
    status = 0
    if ordered:
        u = [point[label] for label in sigma.orbit(k)]
        k_min = numeric_free_cumulant_min(u)
        k_rec = numeric_free_cumulant_recursive(u)
        match = value == k_min == k_rec
        result.update(kappa_min=str(k_min), kappa_recursive=str(k_rec), match=match)
        status = 0 if match else 1
    if args.format == "json":
        print(json.dumps(result), file=out)
    else:
        print(f"Q={value}", file=out)
        if ordered:
            print(f"kappa_min={result['kappa_min']}", file=out)
            print(f"kappa_recursive={result['kappa_recursive']}", file=out)
            print("MATCH" if status == 0 else "MISMATCH", file=out)
        else:
            print("cumulant check skipped: x is not an increasing sequence in [0,1]", file=out)
    return status


def _cmd_dissect(args, out) -> int:
    if args.tree is not None:
        trees = [parse_tree(args.tree)]
        if not trees[0]:
            raise UsageError("the single-leaf tree has no dual dissection")
    else:
        if args.n < 2:
            raise UsageError("dissections need trees with at least 2 leaves")
        trees = enumerate_trees(args.n)
    rows = []
    ok = True
    for t in trees:
        d = tree_to_dissection(t)
        back = dissection_to_tree(d)
        prime = is_prime(t)
        consistent = back == t and prime == (not d.touches(d.polygon_size - 1))
        ok &= consistent
        rows.append((t, d, prime, consistent))
    if args.format == "json":
        obj = [
            {
                "tree": format_tree(t),
                "polygon_size": d.polygon_size,
                "diagonals": [list(x) for x in sorted(d.diagonals)],
                "prime": prime,
                "round_trip": c,
            }
            for t, d, prime, c in rows
        ]
        print(json.dumps(obj), file=out)
    else:
        for t, d, prime, c in rows:
            diags = " ".join(f"({a},{b})" for a, b in sorted(d.diagonals)) or "-"
            flag = "" if c else "\tMISMATCH"
            print(f"{format_tree(t)}\t{diags}\tprime={str(prime).lower()}{flag}", file=out)
    return 0 if ok else 1


COMMANDS = {
    "compute": _cmd_compute,
    "classes": _cmd_classes,
    "verify": _cmd_verify,
    "trees": _cmd_trees,
    "nc": _cmd_nc,
    "eval": _cmd_eval,
    "dissect": _cmd_dissect,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, GuardExceeded, ValueError) as exc:
        print(f"looppoly {args.command}: error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())
