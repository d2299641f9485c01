"""The k-derangement Cayley graph on S_n.

Vertices are permutations identified by their lexicographic (Lehmer)
rank.  ``u`` and ``v`` are adjacent iff ``v * u^-1`` is a k-derangement,
so the neighbours of ``u`` are ``{s * u : s in D_k(n)}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations as _itperms
from math import factorial

import numpy as np

from .enumeration import CapExceeded, all_permutations, enumerate_k_derangements
from .permutations import (
    Permutation,
    compose,
    induced_image,
    inverse,
    k_subsets,
)

EXPLICIT_CAP = 7
IMPLICIT_CAP = 8


def rank(a: Permutation) -> int:
    """Lexicographic rank of ``a`` among the permutations of its degree."""
    n = a.n
    img = a.img
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if img[j] < img[i])
        r += smaller * factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> Permutation:
    if not 0 <= r < factorial(n):
        raise ValueError(f"rank {r} out of range for n={n}")
    pool = list(range(n))
    img = []
    for i in range(n - 1, -1, -1):
        q, r = divmod(r, factorial(i))
        img.append(pool.pop(q))
    return Permutation(tuple(img))


def rank_array(rows: np.ndarray) -> np.ndarray:
    """Vectorized rank of each row of a 0-based one-line array."""
    rows = np.asarray(rows)
    n = rows.shape[-1]
    flat = rows.reshape(-1, n)
    out = np.zeros(flat.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (flat[:, i + 1:] < flat[:, i:i + 1]).sum(axis=1)
        out += smaller * factorial(n - 1 - i)
    return out.reshape(rows.shape[:-1])


@lru_cache(maxsize=None)
def perm_table(n: int) -> np.ndarray:
    """All of S_n as an (n!, n) array, row r = unrank(r)."""
    table = np.array(list(_itperms(range(n))), dtype=np.int8).reshape(-1, n)
    table.setflags(write=False)
    return table


@dataclass
class CayleyGraph:
    """Gamma_{k,n} with connection set D_{k,n}.

    ``mode="explicit"`` materializes a packed adjacency bitmatrix
    (n <= 7); ``"implicit"`` answers adjacency from connection-set
    membership (n <= 8).  ``"auto"`` picks explicit when allowed.
    """

    n: int
    k: int
    mode: str = "auto"
    connection_set: list[Permutation] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        if self.n > IMPLICIT_CAP:
            raise CapExceeded(f"n={self.n} exceeds graph cap {IMPLICIT_CAP}")
        if self.mode == "auto":
            self.mode = "explicit" if self.n <= EXPLICIT_CAP else "implicit"
        if self.mode not in ("explicit", "implicit"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "explicit" and self.n > EXPLICIT_CAP:
            raise CapExceeded(f"explicit mode needs n <= {EXPLICIT_CAP}")
        # for k > n every permutation qualifies; dropping e keeps the graph loopless (complete)
        ident = Permutation.identity(self.n)
        self.connection_set = [s for s in enumerate_k_derangements(self.k, self.n, cap=IMPLICIT_CAP) if s != ident]
        self._conn_rows = np.array([s.img for s in self.connection_set], dtype=np.int8).reshape(-1, self.n)
        self.conn_mask = np.zeros(self.vertex_count, dtype=bool)
        self.conn_mask[rank_array(self._conn_rows)] = True
        self._packed = None
        if self.mode == "explicit":
            self._packed = self._build_packed()

    @property
    def vertex_count(self) -> int:
        return factorial(self.n)

    @property
    def degree(self) -> int:
        return len(self.connection_set)

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.degree // 2

    def vertex(self, r: int) -> Permutation:
        return Permutation(tuple(int(x) for x in perm_table(self.n)[r]))

    def neighbor_ranks(self, ranks) -> np.ndarray:
        """Ranks of s*u for every s in the connection set; shape (len(ranks), degree)."""
        u_rows = perm_table(self.n)[np.atleast_1d(ranks)]
        if self.degree == 0:
            return np.zeros((u_rows.shape[0], 0), dtype=np.int64)
        prod = self._conn_rows[:, u_rows]  # prod[s, u, i] = s[u[i]]
        return rank_array(prod).T

    def neighbors(self, r: int) -> np.ndarray:
        if self._packed is not None:
            return np.flatnonzero(self.adjacency_row(r))
        return np.sort(self.neighbor_ranks(r)[0])

    def _build_packed(self) -> np.ndarray:
        nv = self.vertex_count
        packed = np.zeros((nv, (nv + 7) // 8), dtype=np.uint8)
        chunk = max(1, 2_000_000 // max(1, self.degree * self.n))
        for start in range(0, nv, chunk):
            idx = np.arange(start, min(nv, start + chunk))
            rows = np.zeros((idx.size, nv), dtype=bool)
            if self.degree:
                nbr = self.neighbor_ranks(idx)
                rows[np.arange(idx.size)[:, None], nbr] = True
            packed[idx] = np.packbits(rows, axis=1, bitorder="little")
        return packed

    def adjacency_row(self, r: int) -> np.ndarray:
        if self._packed is None:
            row = np.zeros(self.vertex_count, dtype=bool)
            row[self.neighbor_ranks(r)[0]] = True
            return row
        return np.unpackbits(self._packed[r], count=self.vertex_count, bitorder="little").astype(bool)

    def adjacency_bitsets(self) -> list[int]:
        """Each vertex's neighbourhood as a Python int bitset over ranks."""
        if self._packed is not None:
            return [int.from_bytes(row.tobytes(), "little") for row in self._packed]
        out = []
        for r in range(self.vertex_count):
            packed = np.packbits(self.adjacency_row(r), bitorder="little")
            out.append(int.from_bytes(packed.tobytes(), "little"))
        return out

    def adjacent(self, u: Permutation, v: Permutation) -> bool:
        if u.n != self.n or v.n != self.n:
            raise ValueError("degree mismatch")
        if u == v:
            return False
        return bool(self.conn_mask[rank(compose(v, inverse(u)))])

    def edges(self):
        """Edges (u, v) with u < v, sorted, as rank pairs."""
        for u in range(self.vertex_count):
            for v in self.neighbors(u):
                if v > u:
                    yield u, int(v)


def adjacent(g: CayleyGraph, u: Permutation, v: Permutation) -> bool:
    return g.adjacent(u, v)


def position_agreement_adjacent(u: Permutation, v: Permutation, k: int) -> bool:
    """Adjacency via arrangements: no k positions hold the same k-set in u and v."""
    if u.n != v.n:
        raise ValueError("degree mismatch")
    return all(induced_image(u, s) != induced_image(v, s) for s in k_subsets(u.n, k))


@dataclass(frozen=True)
class Components:
    count: int
    sizes: list[int]
    representatives: list[int]


def connected_components(g: CayleyGraph) -> Components:
    """BFS over implicit adjacency; components found in order of least rank."""
    nv = g.vertex_count
    visited = np.zeros(nv, dtype=bool)
    sizes, reps = [], []
    for start in range(nv):
        if visited[start]:
            continue
        visited[start] = True
        frontier = np.array([start], dtype=np.int64)
        size = 1
        chunk = max(1, 4_000_000 // max(1, g.degree * g.n))
        while frontier.size:
            nxt = np.zeros(nv, dtype=bool)
            for i in range(0, frontier.size, chunk):
                nxt[g.neighbor_ranks(frontier[i:i + chunk]).ravel()] = True
            nxt &= ~visited
            visited |= nxt
            frontier = np.flatnonzero(nxt)
            size += frontier.size
        sizes.append(size)
        reps.append(start)
    return Components(len(sizes), sizes, reps)


def is_eulerian(g: CayleyGraph) -> bool:
    return g.degree % 2 == 0 and connected_components(g).count == 1


def _long_cycle(n: int) -> Permutation:
    return Permutation.from_cycles([list(range(1, n + 1))], n)


def factor_adjacent_transposition(n: int, k: int, h: int) -> tuple[Permutation, Permutation]:
    """Two k-derangements whose product is the transposition (h h+1).

    For k in {1, n-1}: (1 2) = c^2 * (c^-1)^2 (1 2); otherwise
    (1 2) = c^-1 * (1 3 4 ... n), with c = (1 2 ... n).  The pair is then
    conjugated by the rotation sending 1 -> h, 2 -> h+1.
    """
    if n <= 3 or not 1 <= k < n or not 1 <= h < n:
        raise ValueError(f"need n > 3, 1 <= k < n, 1 <= h < n (got n={n}, k={k}, h={h})")
    c = _long_cycle(n)
    c_inv = inverse(c)
    if k in (1, n - 1):
        swap = Permutation.from_cycles([[1, 2]], n)
        d1 = compose(c, c)
        d2 = compose(compose(c_inv, c_inv), swap)
    else:
        d1 = c_inv
        d2 = Permutation.from_cycles([[1] + list(range(3, n + 1))], n)
    rot = Permutation(tuple((i + h - 1) % n for i in range(n)))
    rot_inv = inverse(rot)
    return (compose(compose(rot, d1), rot_inv), compose(compose(rot, d2), rot_inv))


def export_graph(g: CayleyGraph, fmt: str = "dimacs") -> bytes:
    """Serialize as DIMACS, a plain edge list, or JSON.  Vertex ids are rank+1."""
    if g.n > EXPLICIT_CAP:
        raise CapExceeded(f"export needs n <= {EXPLICIT_CAP}")
    edges = [(u + 1, v + 1) for u, v in g.edges()]
    if fmt == "dimacs":
        lines = [f"c Gamma_{{{g.k},{g.n}}} k-derangement Cayley graph",
                 f"p edge {g.vertex_count} {len(edges)}"]
        lines += [f"e {u} {v}" for u, v in edges]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "edges":
        return "".join(f"{u} {v}\n" for u, v in edges).encode()
    if fmt == "json":
        doc = {
            "n": g.n,
            "k": g.k,
            "vertices": [p.one_line() for p in all_permutations(g.n, cap=EXPLICIT_CAP)],
            "edges": [list(e) for e in edges],
        }
        return json.dumps(doc, separators=(",", ":")).encode()
    raise ValueError(f"unknown format {fmt!r}")
