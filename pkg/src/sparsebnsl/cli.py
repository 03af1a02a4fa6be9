"""Command-line front end.

Exit codes: 0 yes, 1 no, 2 usage or parse error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import arcbounded, generators
from .formats import ParseError, dumps_report, format_scores, read_graph, read_scores
from .graphs import ArcSet, is_dag
from .oracle import OracleTooLarge, oracle_solve
from .pi1v import solve_pi1v
from .scores import delta, superstructure
from .verify import constraint_for, verify_solution

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3
VARIANTS = ("pi1v", "ba-dp", "ba-cc", "pi0e", "oracle")
REDUCTIONS = ("clique", "hampath", "tricover", "mcc", "mis")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sparsebnsl", description="Exact BNSL under sparsity constraints.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scored(sp):
        sp.add_argument("scores", help="score file")
        sp.add_argument("--scale", type=_nonneg, default=None,
                        help="accept decimal scores, multiplying by 10^SCALE")
        sp.add_argument("-t", type=_nonneg, default=0, help="score threshold")
        sp.add_argument("-k", type=_nonneg, default=0, help="sparsity budget")

    s = sub.add_parser("solve", help="solve an instance")
    scored(s)
    s.add_argument("--variant", choices=VARIANTS, default="pi1v")
    s.add_argument("--oracle-constraint", choices=("pi1v", "arcs", "pi0e", "none"), default="pi1v",
                   help="constraint used by --variant oracle")
    s.add_argument("--seed", type=_nonneg, default=0)
    s.add_argument("--reps", type=_positive, default=1,
                   help="color coding: multiplier on the default repetition count")
    s.add_argument("--threads", type=_positive, default=1)
    s.add_argument("--timing", action="store_true", help="add elapsed_ms to the report")

    v = sub.add_parser("verify", help="re-check a solution")
    scored(v)
    v.add_argument("solution", help="JSON report or lines 'parent child'")
    v.add_argument("--variant", choices=VARIANTS[:-1] + ("arcs", "none"), default=None,
                   help="constraint to check (default: the report's variant)")

    g = sub.add_parser("gen", help="write a generated score file")
    mode = g.add_mutually_exclusive_group(required=True)
    mode.add_argument("--reduction", choices=REDUCTIONS)
    mode.add_argument("--random", action="store_true")
    g.add_argument("--graph", help="graph file for --reduction")
    g.add_argument("--ell", type=_positive, help="clique size for --reduction clique")
    g.add_argument("-n", type=_positive, default=6)
    g.add_argument("--max-parents", type=_nonneg, default=2)
    g.add_argument("--entries", type=_nonneg, default=3)
    g.add_argument("--score-min", type=_positive, default=1)
    g.add_argument("--score-max", type=_positive, default=100)
    g.add_argument("--empty-max", type=_nonneg, default=None)
    g.add_argument("--acyclic", action="store_true")
    g.add_argument("--seed", type=_nonneg, default=0)
    g.add_argument("-o", "--output", help="output path (default stdout)")

    st = sub.add_parser("stats", help="instance statistics")
    st.add_argument("scores")
    st.add_argument("--scale", type=_nonneg, default=None)
    return p


def _name_witness(witness: dict, names) -> dict:
    out = {}
    for key, val in witness.items():
        if key == "dissociation_set":
            val = [names[v] for v in val]
        elif key == "coloring":
            val = {names[v]: c for v, c in enumerate(val)}
        elif key == "deletion_set":
            val = [[names[x] for x in item] if isinstance(item, list) else names[item]
                   for item in val]
        out[key] = val
    return out


def _solve(args, instance):
    variant = args.variant
    if variant == "pi1v":
        return solve_pi1v(instance, threads=args.threads), "pi1v"
    if variant == "ba-dp":
        try:
            return arcbounded.solve_ba_topological(instance), "arcs"
        except arcbounded.CyclicSuperstructure:
            variant = "ba-cc"
    if variant == "ba-cc":
        res = arcbounded.solve_ba_color_coding(instance, args.seed, multiplier=args.reps,
                                               threads=args.threads)
        if args.variant == "ba-dp":
            res.witness["fallback"] = "cyclic superstructure"
        return res, "arcs"
    if variant == "pi0e":
        return arcbounded.solve_pi0e(instance), "pi0e"
    constraint = args.oracle_constraint
    return oracle_solve(instance, constraint_for(constraint, instance.k)), constraint


def _report(res, instance, verified: bool, seed, transform) -> dict:
    names = instance.names
    report = {
        "variant": res.variant,
        "answer": "yes" if res.answer else "no",
        "score": res.score,
        "t": res.t,
        "k": res.k,
        "arcs": [[names[u], names[v]] for u, v in res.arcs],
        "witness": _name_witness(res.witness, names),
        "verified": verified,
        "seed": seed,
        "stats": res.stats,
    }
    if transform is not None:
        report["transform"] = transform.as_dict()
    return report


def cmd_solve(args, out) -> int:
    instance, transform = read_scores(args.scores, args.scale)
    instance = instance.with_threshold(args.t, args.k)
    start = time.perf_counter()
    res, check = _solve(args, instance)
    elapsed = (time.perf_counter() - start) * 1000
    ver = verify_solution(instance, res.arcs, constraint_for(check, instance.k), res.score)
    seed = args.seed if res.variant == "ba-cc" else None
    report = _report(res, instance, ver.ok, seed, transform)
    if args.timing:
        report["elapsed_ms"] = round(elapsed, 3)
    print(dumps_report(report), file=out)
    if not ver.ok:
        print("verification failed: " + "; ".join(ver.problems), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_YES if res.answer else EXIT_NO


def _read_solution(path: str, names):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    index = {name: i for i, name in enumerate(names)}

    def vid(name, where):
        if name not in index:
            raise ParseError(f"unknown vertex {name!r}", where, path)
        return index[name]

    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
            pairs = doc["arcs"]
        except (ValueError, KeyError, TypeError) as err:
            raise ParseError(f"bad solution report: {err}", None, path) from None
        arcs = []
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"bad arc {pair!r}", None, path)
            arcs.append((vid(pair[0], None), vid(pair[1], None)))
        return arcs, doc.get("score"), doc.get("variant")
    arcs = []
    for no, raw in enumerate(text.splitlines(), 1):
        row = raw.split("#", 1)[0].split()
        if not row:
            continue
        if len(row) != 2:
            raise ParseError("arc line must be 'parent child'", no, path)
        arcs.append((vid(row[0], no), vid(row[1], no)))
    return arcs, None, None


def cmd_verify(args, out) -> int:
    instance, transform = read_scores(args.scores, args.scale)
    instance = instance.with_threshold(args.t, args.k)
    arcs, claimed, variant = _read_solution(args.solution, instance.names)
    variant = args.variant or variant
    if variant is None:
        raise UsageError("cannot tell which constraint to check; pass --variant")
    check = {"ba-dp": "arcs", "ba-cc": "arcs", "oracle": "pi1v"}.get(variant, variant)
    try:
        constraint = constraint_for(check, instance.k)
    except ValueError as err:
        raise UsageError(str(err)) from None
    ver = verify_solution(instance, arcs, constraint, claimed)
    report = {
        "variant": variant,
        "answer": "yes" if ver.ok and ver.score >= instance.t else "no",
        "score": ver.score,
        "t": instance.t,
        "k": instance.k,
        "arcs": [[instance.names[u], instance.names[v]] for u, v in sorted(set(arcs))],
        "verified": ver.ok,
        "problems": ver.problems,
    }
    if transform is not None:
        report["transform"] = transform.as_dict()
    print(dumps_report(report), file=out)
    if not ver.ok:
        return EXIT_VERIFY
    return EXIT_YES if ver.score >= instance.t else EXIT_NO


def _reduce(args):
    if not args.graph:
        raise UsageError("--reduction needs --graph")
    g, colors = read_graph(args.graph)
    if args.reduction == "clique":
        if args.ell is None:
            raise UsageError("--reduction clique needs --ell")
        return generators.from_clique(g, args.ell)
    if args.reduction == "hampath":
        return generators.from_hampath(g)
    if args.reduction == "tricover":
        return generators.from_triangle_cover(g)
    if colors is None:
        raise UsageError(f"--reduction {args.reduction} needs a colors line in the graph file")
    cg = generators.ColoredGraph.from_labels(g, colors)
    if args.reduction == "mcc":
        return generators.from_multicolored_clique(cg)
    return generators.from_multicolored_independent_set(cg)


def cmd_gen(args, out) -> int:
    if args.reduction:
        instance = _reduce(args)
    else:
        if args.score_max < args.score_min:
            raise UsageError("--score-max must be at least --score-min")
        empty = None if args.empty_max is None else (0, args.empty_max)
        instance = generators.random_instance(args.n, args.max_parents, args.entries,
                                              (args.score_min, args.score_max), args.seed,
                                              empty_range=empty, acyclic=args.acyclic)
    text = f"# t={instance.t} k={instance.k}\n" + format_scores(instance)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_stats(args, out) -> int:
    instance, _ = read_scores(args.scores, args.scale)
    sup = superstructure(instance)
    report = {
        "n": instance.n,
        "delta": delta(instance),
        "entries": sum(len(es) for es in instance.entries),
        "superstructure_arcs": len(sup.arcs),
        "acyclic": is_dag(ArcSet(sup.n, sup.arcs)),
    }
    print(dumps_report(report), file=out)
    return 0


COMMANDS = {"solve": cmd_solve, "verify": cmd_verify, "gen": cmd_gen, "stats": cmd_stats}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, ParseError, OracleTooLarge, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
