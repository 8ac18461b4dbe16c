"""Command-line front end.

Exit codes: 0 success, 1 definite negative (simplex found, conjecture
mismatch, infeasible target), 2 usage or input error, 3 budget-inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import formulas
from .family import FamilyError, SetFamily, parse_family, serialize_family
from .search import (DEFAULT_NODE_BUDGET, FEASIBLE, INCONCLUSIVE, INFEASIBLE, LONG_RUNNING_N, OPTIMAL,
                     SearchProblem, default_workers, enumerate_optimal, exact_oracle,
                     max_simplex_free, verify_conjecture)
from .simplex import find_simplex

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, fmt, text_lines):
    if fmt == "json":
        print(json.dumps(obj, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _fmt_sets(fam: SetFamily) -> str:
    return " ".join("{" + ",".join(map(str, s)) + "}" for s in fam.sets())


def cmd_check(args):
    try:
        with open(args.family, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fam = parse_family(text)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    wit = find_simplex(fam, args.d)
    if wit is None:
        _emit({"schema": "simplexfree.check/1", "d": args.d, "simplex_free": True},
              args.format, ["simplex-free"])
        return EXIT_OK
    if args.format == "json":
        print(json.dumps({"schema": "simplexfree.check/1", "d": args.d, "simplex_free": False,
                          "witness": json.loads(wit.to_json())}, separators=(",", ":")))
    else:
        print(wit.to_json())
    return EXIT_NEGATIVE


def _bound_dict(bv):
    return {"value": bv.value, "status": bv.status, "provenance": bv.provenance, "note": bv.note}


def cmd_value(args):
    try:
        bv = formulas.star_value(args.n, args.d, args.k)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit({"schema": "simplexfree.value/1", "n": args.n, "d": args.d, "k": args.k, **_bound_dict(bv)},
          args.format, [f"{bv.value} ({bv.status}, {bv.provenance})" + (f" [{bv.note}]" if bv.note else "")])
    return EXIT_OK


def cmd_bound(args):
    oracle = exact_oracle if args.oracle == "search" else formulas.known_value
    try:
        bv = formulas.lemma_bound(args.n, args.d, args.k, oracle)
    except (ValueError, LookupError) as exc:
        raise UsageError(str(exc))
    lines = [f"g({args.n},{args.d},{args.k}) <= {bv.value} ({bv.status}, {bv.provenance})",
             f"oracle: {args.oracle}; {bv.note}"]
    out = {"schema": "simplexfree.bound/1", "n": args.n, "d": args.d, "k": args.k,
           "oracle": args.oracle, **_bound_dict(bv)}
    if args.d == 2 and args.k <= args.n - 1:
        chain = formulas.lemma_bound_d2(args.n, args.k)
        lines.append(f"simplified d=2 chain: {chain}")
        out["simplified_d2"] = chain
    _emit(out, args.format, lines)
    return EXIT_OK


def cmd_construct(args):
    try:
        fam = formulas.build_star_family(args.n, args.x, args.d, args.k)
    except (ValueError, FamilyError) as exc:
        raise UsageError(str(exc))
    sys.stdout.write(serialize_family(fam))
    return EXIT_OK


def _problem(args) -> SearchProblem:
    if args.k is not None and args.size_cap is not None:
        raise UsageError("give either --k or --size-cap, not both")
    cap = args.size_cap if args.k is None else args.n - args.k
    if args.require_max and cap is None:
        raise UsageError("--require-max needs --k or --size-cap")
    if args.n >= LONG_RUNNING_N and not args.long_running:
        raise UsageError(f"n >= {LONG_RUNNING_N} requires --long-running")
    try:
        return SearchProblem(args.n, args.d, size_cap=cap, require_max=args.require_max,
                             target=getattr(args, "target", None))
    except ValueError as exc:
        raise UsageError(str(exc))


def _outcome_lines(out, with_stats):
    lines = [f"status: {out.status}"]
    if out.optimum is not None:
        lines.append(f"optimum: {out.optimum}")
    if out.witness is not None:
        lines.append(f"witness ({len(out.witness)} sets): {_fmt_sets(out.witness)}")
    if out.optimal_count is not None:
        lines.append(f"optimal families: {out.optimal_count}")
    if out.optimal_orbit_count is not None:
        lines.append(f"orbits: {out.optimal_orbit_count}")
    if out.message:
        lines.append(f"note: {out.message}")
    if with_stats:
        s = out.stats
        lines.append(f"stats: nodes={s.nodes} prunes={s.prunes} simplices={s.simplices} "
                     f"workers={s.workers} time={s.wall_time:.3f}s")
    return lines


def _status_exit(status):
    return {OPTIMAL: EXIT_OK, FEASIBLE: EXIT_OK, INFEASIBLE: EXIT_NEGATIVE,
            INCONCLUSIVE: EXIT_INCONCLUSIVE}[status]


def cmd_search(args):
    prob = _problem(args)
    out = max_simplex_free(prob, workers=args.threads, node_budget=args.node_budget,
                           long_running=args.long_running)
    _emit(out.to_dict(not args.no_stats), args.format, _outcome_lines(out, not args.no_stats))
    return _status_exit(out.status)


def cmd_enumerate(args):
    prob = _problem(args)
    fams, out = enumerate_optimal(prob, workers=args.threads, node_budget=args.node_budget,
                                  long_running=args.long_running)
    obj = out.to_dict(not args.no_stats)
    obj["schema"] = "simplexfree.enumerate/1"
    obj["families"] = [f.sets() for f in fams]
    lines = _outcome_lines(out, not args.no_stats)
    lines += [f"  {_fmt_sets(f)}" for f in fams]
    _emit(obj, args.format, lines)
    return _status_exit(out.status)


def cmd_conjecture(args):
    try:
        rep = verify_conjecture(args.n_max, args.d, workers=args.threads, node_budget=args.node_budget)
    except ValueError as exc:
        raise UsageError(str(exc))
    lines = [f"{'n':>3} {'k':>3} {'exact':>7} {'conj':>7} {'match':>6} {'unique':>6}"]
    for r in rep.rows:
        lines.append(f"{r.n:>3} {r.k:>3} {str(r.exact):>7} {r.conjectured:>7} "
                     f"{str(r.match):>6} {str(r.unique):>6}")
    if not rep.rows:
        lines.append("(no cells with 1 <= k <= n-d-1)")
    lines.append(f"complete: {rep.complete}; all match: {rep.all_match}")
    _emit(rep.to_dict(), args.format, lines)
    if not rep.complete:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if rep.all_match else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simplexfree",
                                description="Exact tools for d-simplex-free set families.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("table", "json"), default="table")

    sp = sub.add_parser("check", help="test a family file for a d-simplex")
    sp.add_argument("--family", required=True)
    sp.add_argument("--d", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_check)

    for verb, func, hlp in (("value", cmd_value, "star-family value with proof status"),
                            ("bound", cmd_bound, "link-decomposition upper bound on g(n,d,k)")):
        sp = sub.add_parser(verb, help=hlp)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--k", type=int, default=0 if verb == "value" else None, required=verb == "bound")
        if verb == "bound":
            sp.add_argument("--oracle", choices=("known", "search"), default="known")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("construct", help="write the star family as JSON")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=int, default=0)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, default=0)
    sp.set_defaults(func=cmd_construct)

    def searchy(sp, with_target):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--k", type=int)
        sp.add_argument("--size-cap", type=int)
        sp.add_argument("--require-max", action="store_true")
        if with_target:
            sp.add_argument("--target", type=int)
        sp.add_argument("--threads", type=int, default=default_workers())
        sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
        sp.add_argument("--long-running", action="store_true")
        sp.add_argument("--no-stats", action="store_true", help="omit run statistics")
        common(sp)

    sp = sub.add_parser("search", help="exact maximum by branch and bound")
    searchy(sp, True)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("enumerate", help="all optimal families and their orbits")
    searchy(sp, False)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("conjecture", help="check the star-family values on a small grid")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--threads", type=int, default=default_workers())
    sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
