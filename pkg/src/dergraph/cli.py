"""Command-line entry point: ``dergraph <subcommand> ...``.

Exit codes: 0 success, 1 verification failure or claim mismatch,
2 usage error (bad flags, out-of-cap sizes, malformed input).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .cayley import (
    CayleyGraph,
    EXPLICIT_CAP,
    connected_components,
    export_graph,
    factor_adjacent_transposition,
    is_eulerian,
)
from .constructions import (
    MalformedCertificate,
    build_clique,
    build_independent_set,
    coset_coloring,
    dumps_certificate,
    loads_certificate,
    verify,
)
from .enumeration import CapExceeded, count_k_derangements, cycle_class_reports, predict_eulerian
from .finitefield import FieldSpec
from .permutations import compose, is_k_derangement, Permutation
from .report import fmt_parts, types_csv, write_report
from .search import DEFAULT_SEED, SearchBudget, grow_clique_heuristic, max_clique, max_independent_set

log = logging.getLogger("dergraph")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def _check_nk(args, need_k_below_n=True):
    if args.n < 1 or args.k < 1:
        raise UsageError("n and k must be positive")
    if need_k_below_n and args.k >= args.n:
        raise UsageError(f"need k < n (got n={args.n}, k={args.k})")


def _cap(n, cap, what):
    if n > cap:
        raise UsageError(f"{what} supports n <= {cap} (got n={n})")


def _budget(args, mode="exact"):
    return SearchBudget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds, mode=args.mode or mode)


# -- subcommands ---------------------------------------------------------------


def cmd_count(args):
    _check_nk(args, need_k_below_n=False)
    d = count_k_derangements(args.k, args.n)
    pred = predict_eulerian(args.k, args.n) if args.n > 3 and args.k < args.n else None
    if args.format == "csv":
        _emit(types_csv([(args.n, args.k)]), args.out)
    else:
        _emit(_dumps({"n": args.n, "k": args.k, "D": d, "eulerian_predicted": pred}), args.out)
    return 0


def cmd_types(args):
    _check_nk(args, need_k_below_n=False)
    if sys.stdout.isatty() and not args.out:
        print(f"{'cycle_type':<16}{'class_size':>12}  k-derangement")
        for rep in cycle_class_reports(args.k, args.n):
            print(f"{fmt_parts(rep.cycle_type):<16}{rep.class_size:>12}  {'yes' if rep.is_derangement_type else 'no'}")
    else:
        _emit(types_csv([(args.n, args.k)]), args.out)
    return 0


def cmd_graph(args):
    _check_nk(args, need_k_below_n=False)
    _cap(args.n, EXPLICIT_CAP, "graph export")
    data = export_graph(CayleyGraph(args.n, args.k), args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def cmd_components(args):
    _check_nk(args, need_k_below_n=False)
    _cap(args.n, EXPLICIT_CAP, "component search")
    comp = connected_components(CayleyGraph(args.n, args.k, mode="implicit"))
    _emit(_dumps({"n": args.n, "k": args.k, "components": comp.count, "sizes": comp.sizes,
                  "representatives": [r + 1 for r in comp.representatives]}), args.out)
    return 0


def cmd_eulerian(args):
    _check_nk(args)
    _cap(args.n, EXPLICIT_CAP, "Eulerian check")
    g = CayleyGraph(args.n, args.k, mode="implicit")
    computed = is_eulerian(g)
    predicted = predict_eulerian(args.k, args.n) if args.n > 3 else None
    _emit(_dumps({"n": args.n, "k": args.k, "D": g.degree, "predicted": predicted, "computed": computed}), args.out)
    return 0 if predicted is None or predicted == computed else 1


def cmd_factor(args):
    _check_nk(args)
    if args.n <= 3:
        raise UsageError("factorization needs n > 3")
    if not 1 <= args.h < args.n:
        raise UsageError(f"need 1 <= h < n (got h={args.h})")
    d1, d2 = factor_adjacent_transposition(args.n, args.k, args.h)
    product = compose(d1, d2)
    ok = (product == Permutation.from_cycles([[args.h, args.h + 1]], args.n)
          and is_k_derangement(d1, args.k) and is_k_derangement(d2, args.k))
    _emit(_dumps({"n": args.n, "k": args.k, "h": args.h,
                  "d1": d1.one_line(), "d1_cycles": d1.cycle_string(),
                  "d2": d2.one_line(), "d2_cycles": d2.cycle_string(),
                  "product": product.cycle_string(), "ok": ok}), args.out)
    return 0 if ok else 1


def cmd_clique_construct(args):
    modulus = args.modulus
    try:
        spec = FieldSpec.for_order(args.n, modulus)
    except ValueError as exc:
        raise UsageError(f"cannot build GF({args.n}): {exc}")
    try:
        cert = build_clique(spec, args.t_labels)
    except ValueError as exc:
        raise UsageError(str(exc))
    verdict = verify(cert)
    _emit(dumps_certificate(cert), args.out)
    log.info("clique of size %d: %s", len(cert.members), verdict.describe())
    return 0 if verdict else 1


def cmd_independent_set(args):
    _check_nk(args)
    _cap(args.n, 8, "independent-set construction")
    cert = build_independent_set(args.k, args.n)
    _emit(dumps_certificate(cert), args.out)
    return 0


def cmd_coloring(args):
    _check_nk(args)
    _cap(args.n, EXPLICIT_CAP, "colouring")
    _emit(dumps_certificate(coset_coloring(args.k, args.n)), args.out)
    return 0


def cmd_verify(args):
    try:
        cert = loads_certificate(Path(args.certificate).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc}")
    except MalformedCertificate as exc:
        raise UsageError(f"malformed certificate: {exc}")
    verdict = verify(cert)
    if verdict:
        size = len(cert.color_of) if cert.type == "coloring" else len(cert.members)
        print(_dumps({"type": cert.type, "n": cert.n, "k": cert.k, "size": size, "valid": True}), end="")
        return 0
    print(f"invalid {cert.type} certificate: {verdict.describe()}", file=sys.stderr)
    return 1


def cmd_search_clique(args):
    _check_nk(args)
    _cap(args.n, 7, "clique search")
    g = CayleyGraph(args.n, args.k)
    budget = _budget(args)
    res = max_clique(g, budget)
    if args.n >= 6 and args.heuristic:
        cert = grow_clique_heuristic(g, budget=budget, rng_seed=args.seed)
        if len(cert.members) > res.best_size:
            res.best_size, res.witness, res.proven_optimal = len(cert.members), cert, False
    _emit(json.dumps(res.to_json(), separators=(",", ":")) + "\n", args.out)
    return 0


def cmd_search_independent(args):
    _check_nk(args)
    _cap(args.n, 7, "independent set search")
    budget = _budget(args)
    if args.n > 5 and budget.mode == "exact":
        raise UsageError("exact independent set search supports n <= 5; use --mode lower-bound-only")
    res = max_independent_set(CayleyGraph(args.n, args.k), budget)
    _emit(json.dumps(res.to_json(), separators=(",", ":")) + "\n", args.out)
    return 0


def cmd_report(args):
    if not 4 <= args.max_n <= 6:
        raise UsageError("report supports --max-n between 4 and 6")
    out = args.out or "report"
    ok, summary = write_report(out, max_n=args.max_n, heuristic_seed=args.seed)
    if sys.stdout.isatty():
        for c in summary["checks"]:
            print(f"[{'PASS' if c['ok'] else 'FAIL'}] {c['name']}")
        print(f"wrote {out}/summary.json, counts.csv, types.csv")
    else:
        print(_dumps({"all_ok": ok, "checks": len(summary["checks"]),
                      "failed": [c["name"] for c in summary["checks"] if not c["ok"]]}), end="")
    return 0 if ok else 1


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=1, help="worker cap (searches run single-threaded)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    nk = argparse.ArgumentParser(add_help=False)
    nk.add_argument("--n", type=int, required=True)
    nk.add_argument("--k", type=int, required=True)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget-seconds", type=float, default=300.0)
    budget.add_argument("--budget-nodes", type=int, default=10**8)
    budget.add_argument("--mode", choices=["exact", "lower-bound-only"], default=None)
    budget.add_argument("--seed", type=int, default=DEFAULT_SEED, help="heuristic RNG seed")

    p = _Parser(prog="dergraph", description="Generalized derangement graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("count", parents=[common, nk], help="D_k(n) and Eulerian prediction")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("types", parents=[common, nk], help="cycle-type table")
    s.set_defaults(func=cmd_types)

    s = sub.add_parser("graph", parents=[common, nk], help="export the graph")
    s.add_argument("--format", choices=["dimacs", "json", "edges"], default="dimacs")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("components", parents=[common, nk], help="connected components")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("eulerian", parents=[common, nk], help="predicted vs computed Eulerian")
    s.set_defaults(func=cmd_eulerian)

    s = sub.add_parser("factor-transposition", parents=[common, nk], help="(h h+1) as two k-derangements")
    s.add_argument("--h", type=int, default=1)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("clique-construct", parents=[common], help="affine clique for odd prime-power n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t-labels", type=_int_list, default=None)
    s.add_argument("--modulus", type=_int_list, default=None, help="coefficients, constant term first")
    s.set_defaults(func=cmd_clique_construct)

    s = sub.add_parser("independent-set", parents=[common, nk], help="set-stabilizer independent set")
    s.set_defaults(func=cmd_independent_set)

    s = sub.add_parser("coloring", parents=[common, nk], help="coset colouring")
    s.set_defaults(func=cmd_coloring)

    s = sub.add_parser("verify", parents=[common], help="verify a certificate file")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search-clique", parents=[common, nk, budget], help="exact maximum clique")
    s.add_argument("--no-heuristic", dest="heuristic", action="store_false")
    s.set_defaults(func=cmd_search_clique)

    s = sub.add_parser("search-independent", parents=[common, nk, budget], help="exact maximum independent set")
    s.set_defaults(func=cmd_search_independent)

    s = sub.add_parser("report", parents=[common], help="full consistency sweep")
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_report)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(message)s")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"dergraph: error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"dergraph: error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
