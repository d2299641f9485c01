"""Exact clique / independent-set search on small derangement graphs.

Cayley graphs are vertex-transitive, so a maximum clique may be assumed
to contain the identity: omega = 1 + omega(G[N(e)]).  The same holds
for independent sets, using the complementary connection set.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .cayley import CayleyGraph, perm_table, rank, rank_array
from .constructions import (
    CliqueCertificate,
    IndependentSetCertificate,
    certificate_to_json,
    verify_clique,
    verify_independent_set,
)
from .permutations import Permutation

DEFAULT_SEED = 20090601


class BudgetExhausted(Exception):
    pass


@dataclass
class SearchBudget:
    max_nodes: int = 10**8
    max_seconds: float = 300.0
    mode: str = "exact"  # or "lower-bound-only"

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")
        if self.mode not in ("exact", "lower-bound-only"):
            raise ValueError(f"unknown search mode {self.mode!r}")


@dataclass
class SearchResult:
    best_size: int
    witness: object
    proven_optimal: bool
    nodes_explored: int = 0

    def to_json(self) -> dict:
        return {
            "best_size": self.best_size,
            "proven_optimal": self.proven_optimal,
            "nodes_explored": self.nodes_explored,
            "witness": certificate_to_json(self.witness),
        }


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class _Clique:
    adj: list[int]
    budget: SearchBudget
    cap: int | None = None  # no clique can be larger than this
    best: list[int] = field(default_factory=list)
    nodes: int = 0

    def __post_init__(self):
        self.deadline = time.monotonic() + self.budget.max_seconds

    def _color_sort(self, cand: int):
        adj = self.adj
        verts = sorted(_bits(cand), key=lambda v: (-(adj[v] & cand).bit_count(), v))
        classes: list[int] = []
        members: list[list[int]] = []
        for v in verts:
            for c, cls in enumerate(classes):
                if not cls & adj[v]:
                    classes[c] |= 1 << v
                    members[c].append(v)
                    break
            else:
                classes.append(1 << v)
                members.append([v])
        order, bounds = [], []
        for c, vs in enumerate(members, start=1):
            order.extend(vs)
            bounds.extend([c] * len(vs))
        return order, bounds

    def _expand(self, chosen: list[int], cand: int):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes or (
            self.nodes % 1024 == 0 and time.monotonic() > self.deadline
        ):
            raise BudgetExhausted
        order, bounds = self._color_sort(cand)
        for i in range(len(order) - 1, -1, -1):
            if len(chosen) + bounds[i] <= len(self.best):
                return
            v = order[i]
            chosen.append(v)
            sub = cand & self.adj[v]
            if sub:
                self._expand(chosen, sub)
            elif len(chosen) > len(self.best):
                self.best = list(chosen)
            chosen.pop()
            if self.cap is not None and len(self.best) >= self.cap:
                return
            cand &= ~(1 << v)

    def run(self, cand: int, initial: list[int] | None = None) -> bool:
        """Search; True iff the search space was exhausted (optimum proven)."""
        if initial and len(initial) > len(self.best):
            self.best = list(initial)
        if self.cap is not None and len(self.best) >= self.cap:
            return True
        try:
            if cand:
                self._expand([], cand)
        except BudgetExhausted:
            return False
        return True


def _local_adjacency(rows: np.ndarray, mask: np.ndarray) -> list[int]:
    """Bitsets over ``rows`` where i ~ j iff rows[j] * rows[i]^-1 lies in ``mask``."""
    m, n = rows.shape
    if m == 0:
        return []
    inv = np.argsort(rows, axis=1).astype(np.int8)
    adj = []
    chunk = max(1, 2_000_000 // (m * n))
    for start in range(0, m, chunk):
        block = inv[start:start + chunk]  # (b, n)
        quot = rows[:, block]  # quot[j, i, x] = rows[j][inv_i[x]]
        hit = mask[rank_array(quot)].T  # (b, m)
        for i, row in enumerate(hit):
            row = row.copy()
            row[start + i] = False
            packed = np.packbits(row, bitorder="little")
            adj.append(int.from_bytes(packed.tobytes(), "little"))
    return adj


def _greedy(adj: list[int], cand: int, rng: random.Random | None = None, top: int = 1) -> list[int]:
    chosen = []
    while cand:
        scored = sorted(((-(adj[v] & cand).bit_count(), v) for v in _bits(cand)))
        if rng is not None and top > 1:
            v = rng.choice(scored[:top])[1]
        else:
            v = scored[0][1]
        chosen.append(v)
        cand &= adj[v]
    return chosen


def _solve(adj_rows, cand, budget, cap):
    state = _Clique(adj_rows, budget, cap=cap)
    initial = _greedy(adj_rows, cand)
    if budget.mode == "lower-bound-only":
        state.best = initial
        return state.best, False, 0
    proven = state.run(cand, initial)
    return state.best, proven, state.nodes


def _full_mask(g: CayleyGraph, independent: bool) -> np.ndarray:
    if not independent:
        return g.conn_mask
    mask = ~g.conn_mask
    mask[0] = False  # identity
    return mask


def _search(g: CayleyGraph, budget: SearchBudget, independent: bool, reduce_symmetry: bool):
    budget = budget or SearchBudget()
    mask = _full_mask(g, independent)
    table = perm_table(g.n)
    cap = comb(g.n, g.k) if not independent else None
    if reduce_symmetry:
        ranks = np.flatnonzero(mask)
        adj = _local_adjacency(table[ranks], mask)
        cand = (1 << len(ranks)) - 1
        best, proven, nodes = _solve(adj, cand, budget, None if cap is None else cap - 1)
        vertex_ranks = [0] + [int(ranks[i]) for i in best]
    else:
        adj = _local_adjacency(table, mask)
        cand = (1 << g.vertex_count) - 1
        best, proven, nodes = _solve(adj, cand, budget, cap)
        vertex_ranks = [int(r) for r in best]
    members = sorted(g.vertex(r) for r in vertex_ranks)
    kind = IndependentSetCertificate if independent else CliqueCertificate
    prov = {"construction": "search", "reduced": reduce_symmetry, "mode": budget.mode}
    cert = kind(g.n, g.k, members, prov)
    verdict = verify_independent_set(cert) if independent else verify_clique(cert)
    if not verdict:
        raise AssertionError(f"search produced an invalid witness: {verdict.describe()}")
    return SearchResult(len(members), cert, proven and budget.mode == "exact", nodes)


def max_clique(g: CayleyGraph, budget: SearchBudget | None = None, reduce_symmetry: bool = True) -> SearchResult:
    """Maximum clique by branch and bound with greedy-colouring bounds.

    Also stops once a clique of size C(n, k) is found, since no clique
    can be larger.
    """
    if g.n > 7:
        raise ValueError("exact clique search supports n <= 7")
    return _search(g, budget or SearchBudget(), False, reduce_symmetry)


def max_independent_set(g: CayleyGraph, budget: SearchBudget | None = None, reduce_symmetry: bool = True) -> SearchResult:
    """Maximum independent set as a maximum clique of the complement graph."""
    if g.n > 7:
        raise ValueError("independent set search supports n <= 7")
    budget = budget or SearchBudget()
    if g.n > 5 and budget.mode == "exact":
        raise ValueError("exact independent set search supports n <= 5")
    return _search(g, budget, True, reduce_symmetry)


def grow_clique_heuristic(
    g: CayleyGraph,
    seed: list[Permutation] | None = None,
    budget: SearchBudget | None = None,
    restarts: int = 200,
    rng_seed: int = DEFAULT_SEED,
) -> CliqueCertificate:
    """Extend ``seed`` to a large clique by randomized greedy restarts.

    Seed members are always kept.  An empty seed starts from the
    identity, which loses nothing by vertex-transitivity.
    """
    budget = budget or SearchBudget()
    seed = list(seed or [])
    prov = {"construction": "heuristic", "rng_seed": rng_seed, "restarts": restarts}
    if seed:
        check = verify_clique(CliqueCertificate(g.n, g.k, seed))
        if not check:
            raise ValueError(f"seed is not a clique: {check.describe()}")
    base = [rank(p) for p in seed] or [0]
    adj = g.adjacency_bitsets()
    cand = (1 << g.vertex_count) - 1
    for r in base:
        cand &= adj[r]
    cap = comb(g.n, g.k)
    rng = random.Random(rng_seed)
    deadline = time.monotonic() + budget.max_seconds
    best = _greedy(adj, cand)
    for attempt in range(restarts):
        if len(base) + len(best) >= cap or time.monotonic() > deadline:
            break
        trial = _greedy(adj, cand, rng, top=2 + attempt % 5)
        if len(trial) > len(best):
            best = trial
    seeded = set(base[:len(seed)])
    members = seed + [g.vertex(r) for r in sorted(set(base) | set(best)) if r not in seeded]
    cert = CliqueCertificate(g.n, g.k, members, prov)
    if not verify_clique(cert):
        raise AssertionError("heuristic produced an invalid clique")
    return cert
