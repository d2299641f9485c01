"""The consistency sweep behind ``dergraph report``.

Every check compares a computed value with a known expectation; the
output files are deterministic (no timings, sorted keys).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from math import comb, factorial
from pathlib import Path

from .cayley import CayleyGraph, connected_components, factor_adjacent_transposition, is_eulerian
from .constructions import (
    build_clique,
    build_independent_set,
    coset_coloring,
    frankl_deza_check,
    verify_clique,
    verify_coloring,
    verify_independent_set,
)
from .enumeration import (
    all_permutations,
    class_size,
    count_k_derangements,
    cycle_class_reports,
    deranged_cycle_types,
    double_factorial,
    enumerate_k_derangements,
    partitions,
    predict_eulerian,
)
from .finitefield import FieldSpec
from .permutations import (
    Permutation,
    compose,
    is_k_derangement,
    is_k_derangement_direct,
    parse_permutation,
)
from .search import SearchBudget, grow_clique_heuristic, max_clique, max_independent_set

# D_{2,4} as listed in cycle notation.
D_2_4 = [
    "(1234)", "(1243)", "(1324)", "(1342)", "(1423)", "(1432)", "(123)(4)",
    "(124)(3)", "(132)(4)", "(134)(2)", "(142)(3)", "(143)(2)", "(234)(1)", "(243)(1)",
]


def _parse_compact(text: str, n: int) -> Permutation:
    # "(1234)" style: single-digit points without separators
    spaced = "".join(c if c in "()" else c + " " for c in text)
    return parse_permutation(spaced, n)


def d_2_4_listed() -> list[Permutation]:
    return sorted(_parse_compact(c, 4) for c in D_2_4)


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    ok: bool

    def to_json(self):
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "ok": self.ok}


def _eq(name, expected, computed):
    return Check(name, expected, computed, expected == computed)


def fmt_parts(parts) -> str:
    return " ".join(map(str, parts))


def counts_csv(max_n: int = 8) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "D", "D_parity", "eulerian_predicted"])
    for n in range(2, max_n + 1):
        for k in range(1, n):
            d = count_k_derangements(k, n)
            pred = predict_eulerian(k, n) if n > 3 else ""
            w.writerow([n, k, d, "even" if d % 2 == 0 else "odd", pred])
    return buf.getvalue()


def types_csv(pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "cycle_type", "class_size", "is_derangement_type"])
    for n, k in pairs:
        for rep in cycle_class_reports(k, n):
            w.writerow([n, k, fmt_parts(rep.cycle_type), rep.class_size, str(rep.is_derangement_type).lower()])
    return buf.getvalue()


def run_checks(max_n: int = 6, heuristic_seed: int | None = None) -> tuple[list[Check], dict]:
    checks: list[Check] = []
    add = checks.append

    # counting
    add(_eq("D_2(4)", 14, count_k_derangements(2, 4)))
    add(_eq("CD_{2,4}", [[4], [3, 1]], [list(r) for r in deranged_cycle_types(2, 4)]))
    add(_eq("D_{2,4} listed members", [p.one_line() for p in d_2_4_listed()],
            [p.one_line() for p in enumerate_k_derangements(2, 4)]))
    add(_eq("D_2(3) (degree in Gamma_{2,3})", 2, count_k_derangements(2, 3)))

    mismatches = 0
    for n in range(1, max_n + 1):
        for p in all_permutations(n):
            for k in range(1, n + 1):
                mismatches += is_k_derangement(p, k) != is_k_derangement_direct(p, k)
    add(_eq(f"cycle-type predicate == direct predicate, n <= {max_n}", 0, mismatches))

    asym = [[n, k] for n in range(2, 9) for k in range(1, n)
            if count_k_derangements(k, n) != count_k_derangements(n - k, n)]
    add(_eq("D_k(n) == D_{n-k}(n), n <= 8", [], asym))

    # Eulerian parity law
    bad = [[n, k] for n in range(4, 9) for k in range(1, n)
           if (count_k_derangements(k, n) % 2 == 0) != predict_eulerian(k, n)]
    add(_eq("D_k(n) even iff predicted Eulerian, 4 <= n <= 8", [], bad))

    lemma = [fmt_parts(r) for n in range(1, 11) for r in partitions(n)
             if max(r) > 2 and class_size(r) % 2]
    add(_eq("class sizes with a part > 2 are even, n <= 10", [], lemma))
    matching = {str(n): class_size((2,) * (n // 2)) for n in range(2, 11, 2)}
    add(_eq("class size of (2,...,2) is (n-1)!!", {str(n): double_factorial(n - 1) for n in range(2, 11, 2)}, matching))

    # graphs
    g23 = CayleyGraph(3, 2)
    comp = connected_components(g23)
    add(_eq("Gamma_{2,3} component sizes", [3, 3], comp.sizes))
    add(_eq("Gamma_{1,2} components", 1, connected_components(CayleyGraph(2, 1)).count))
    add(_eq("Gamma_{2,3} Eulerian", False, is_eulerian(g23)))
    disconnected, euler_bad, asym_edges = [], [], []
    for n in range(4, max_n + 1):
        for k in range(1, n):
            g = CayleyGraph(n, k)
            if connected_components(g).count != 1:
                disconnected.append([n, k])
            if is_eulerian(g) != predict_eulerian(k, n):
                euler_bad.append([n, k])
            if 2 * k < n and list(g.edges()) != list(CayleyGraph(n, n - k).edges()):
                asym_edges.append([n, k])
    add(_eq(f"Gamma_{{k,n}} connected, 4 <= n <= {max_n}", [], disconnected))
    add(_eq(f"is_eulerian == predicted, 4 <= n <= {max_n}", [], euler_bad))
    add(_eq(f"Gamma_{{k,n}} == Gamma_{{n-k,n}}, 4 <= n <= {max_n}", [], asym_edges))

    bad_factor = []
    for n in range(4, max_n + 1):
        for k in range(1, n):
            for h in range(1, n):
                d1, d2 = factor_adjacent_transposition(n, k, h)
                swap = Permutation.from_cycles([[h, h + 1]], n)
                if not (is_k_derangement(d1, k) and is_k_derangement(d2, k) and compose(d1, d2) == swap):
                    bad_factor.append([n, k, h])
    add(_eq(f"adjacent transpositions factor into two k-derangements, n <= {max_n}", [], bad_factor))

    # constructions
    sizes = {}
    for order in (3, 5, 7, 9):
        cert = build_clique(FieldSpec.for_order(order))
        sizes[str(order)] = len(cert.members) if verify_clique(cert) else -1
    add(_eq("affine clique sizes C(q,2)", {str(q): comb(q, 2) for q in (3, 5, 7, 9)}, sizes))
    add(_eq("GF(9) modulus", [1, 0, 1], list(FieldSpec.for_order(9).modulus)))
    gf7 = FieldSpec(7)
    t145 = build_clique(gf7, [1, 4, 5])
    add(_eq("GF(7) clique with T={1,4,5} verified", [21, True], [len(t145.members), verify_clique(t145).ok]))

    ind_bad = []
    for n in range(2, max_n + 1):
        for k in range(1, n):
            cert = build_independent_set(k, n)
            if len(cert.members) != factorial(k) * factorial(n - k) or not verify_independent_set(cert):
                ind_bad.append([n, k])
    add(_eq(f"stabilizer independent sets, n <= {max_n}", [], ind_bad))
    col_bad = []
    for n in range(2, min(max_n, 5) + 1):
        for k in range(1, n):
            cert = coset_coloring(k, n)
            if cert.num_colors != comb(n, k) or not verify_coloring(cert):
                col_bad.append([n, k])
    add(_eq("coset colourings proper with C(n,k) colours, n <= 5", [], col_bad))

    # searches
    budget = SearchBudget(max_nodes=10**7, max_seconds=10**6)
    res = {}
    for name, fn, n in (("omega", max_clique, 3), ("omega", max_clique, 4), ("omega", max_clique, 5),
                        ("alpha", max_independent_set, 4), ("alpha", max_independent_set, 5)):
        r = fn(CayleyGraph(n, 2), budget)
        res[f"{name}(Gamma_{{2,{n}}})"] = [r.best_size, r.proven_optimal]
    add(_eq("exact search values", {
        "omega(Gamma_{2,3})": [3, True], "omega(Gamma_{2,4})": [5, True], "omega(Gamma_{2,5})": [10, True],
        "alpha(Gamma_{2,4})": [4, True], "alpha(Gamma_{2,5})": [12, True],
    }, res))
    add(_eq("alpha*omega <= 4! at n=4", True, frankl_deza_check(res["alpha(Gamma_{2,4})"][0], res["omega(Gamma_{2,4})"][0], 4)))
    add(_eq("alpha*omega == 5! at n=5", 120, res["alpha(Gamma_{2,5})"][0] * res["omega(Gamma_{2,5})"][0]))

    info = {}
    if max_n >= 6:
        g26 = CayleyGraph(6, 2)
        kw = {} if heuristic_seed is None else {"rng_seed": heuristic_seed}
        found = len(grow_clique_heuristic(g26, **kw).members)
        add(Check("heuristic clique in Gamma_{2,6} of size >= 9", ">= 9", found, found >= 9))
        exact = max_clique(g26, SearchBudget(max_nodes=10**6, max_seconds=10**6))
        info["omega(Gamma_{2,6})"] = {"best_size": exact.best_size, "proven_optimal": exact.proven_optimal}
    return checks, info


def write_report(out_dir, max_n: int = 6, heuristic_seed: int | None = None) -> tuple[bool, dict]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    checks, info = run_checks(max_n, heuristic_seed)
    all_ok = all(c.ok for c in checks)
    summary = {"all_ok": all_ok, "checks": [c.to_json() for c in checks], "informational": info}
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    (out / "counts.csv").write_text(counts_csv(8))
    pairs = [(n, k) for n in range(2, max_n + 1) for k in range(1, n)]
    (out / "types.csv").write_text(types_csv(pairs))
    return all_ok, summary
