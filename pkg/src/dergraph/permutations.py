"""Permutations of {1, ..., n}, their induced action on k-subsets, and
two independent k-derangement predicates.

Points are 1-based at every public boundary (one-line arrays, cycle
strings, subsets) and 0-based inside ``Permutation.img``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation in one-line form.

    ``img[i]`` is the (0-based) image of point ``i + 1``.  Ordering of
    instances is lexicographic on the one-line form.
    """

    img: tuple[int, ...]

    def __post_init__(self):
        if len(self.img) == 0:
            raise ValueError("permutation degree must be at least 1")
        if sorted(self.img) != list(range(len(self.img))):
            raise ValueError(f"not a permutation: {self.one_line()}")

    @classmethod
    def from_one_line(cls, values: Iterable[int]) -> "Permutation":
        return cls(tuple(int(v) - 1 for v in values))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} out of range 1..{n}")
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
                img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.img)

    def __call__(self, x: int) -> int:
        return self.img[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def one_line(self) -> list[int]:
        return [v + 1 for v in self.img]

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.img[x]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.cycle_string()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse cycle notation ``"(1 2 3)(4)"`` or a one-line list ``"2,3,1"``.

    Cycle notation needs ``n`` unless the largest point mentioned is the
    degree.  Commas or whitespace separate points.
    """
    text = text.strip()
    if text.startswith("("):
        if _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        top = max((x for c in cycles for x in c), default=1)
        return Permutation.from_cycles(cycles, n if n is not None else top)
    values = [int(t) for t in re.split(r"[\s,\[\]]+", text) if t]
    perm = Permutation.from_one_line(values)
    if n is not None and perm.n != n:
        raise ValueError(f"expected degree {n}, got {perm.n}")
    return perm


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return a∘b, i.e. x ↦ a(b(x))."""
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    ai = a.img
    return Permutation(tuple(ai[j] for j in b.img))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.n
    for i, j in enumerate(a.img):
        inv[j] = i
    return Permutation(tuple(inv))


def cycle_type(a: Permutation) -> tuple[int, ...]:
    """Cycle lengths (fixed points included) in non-increasing order."""
    return tuple(sorted((len(c) for c in a.cycles()), reverse=True))


def induced_image(a: Permutation, s: Iterable[int]) -> tuple[int, ...]:
    out = []
    for x in s:
        if not 1 <= x <= a.n:
            raise ValueError(f"point {x} out of range 1..{a.n}")
        out.append(a.img[x - 1] + 1)
    return tuple(sorted(out))


def k_subsets(n: int, k: int):
    """All k-subsets of {1..n} in lexicographic order."""
    return combinations(range(1, n + 1), k)


def is_k_derangement_direct(a: Permutation, k: int) -> bool:
    """Definition-based check: no k-subset is mapped onto itself."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > a.n:
        return True
    return all(induced_image(a, s) != s for s in k_subsets(a.n, k))


def has_subpartition(parts: Iterable[int], k: int) -> bool:
    """True iff some sub-multiset of ``parts`` sums to exactly ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mask = (1 << (k + 1)) - 1
    reach = 1  # bit j set <=> sum j reachable
    for p in parts:
        reach = (reach | (reach << p)) & mask
        if reach >> k & 1:
            return True
    return bool(reach >> k & 1)


def is_k_derangement(a: Permutation, k: int) -> bool:
    """Cycle-type check: no set of cycles has lengths summing to k."""
    if k < 1:
        raise ValueError("k must be positive")
    return not has_subpartition(cycle_type(a), k)
