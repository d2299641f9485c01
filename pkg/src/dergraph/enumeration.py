"""Partitions, conjugacy-class sizes and exact k-derangement counts."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itperms
from math import factorial
from pathlib import Path

from .permutations import Permutation, has_subpartition, is_k_derangement

DEFAULT_ENUMERATION_CAP = 8


class CapExceeded(ValueError):
    """Raised when a request would materialize more of S_n than allowed."""


@dataclass(frozen=True)
class CycleClassReport:
    cycle_type: tuple[int, ...]
    class_size: int
    is_derangement_type: bool

    @property
    def n(self) -> int:
        return sum(self.cycle_type)


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, reverse-lexicographic."""
    if n < 1:
        raise ValueError("n must be positive")
    out: list[tuple[int, ...]] = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def class_size(parts) -> int:
    """Number of permutations of S_n with cycle type ``parts``.

    n! / prod(i**m_i * m_i!) where m_i is the multiplicity of part i.
    """
    n = sum(parts)
    denom = 1
    for part, mult in Counter(parts).items():
        denom *= part**mult * factorial(mult)
    return factorial(n) // denom


def deranged_cycle_types(k: int, n: int) -> list[tuple[int, ...]]:
    if k < 1:
        raise ValueError("k must be positive")
    return [r for r in partitions(n) if not has_subpartition(r, k)]


def cycle_class_reports(k: int, n: int) -> list[CycleClassReport]:
    return [
        CycleClassReport(r, class_size(r), not has_subpartition(r, k))
        for r in partitions(n)
    ]


def _cache_file() -> Path | None:
    root = os.environ.get("DERANGE_CACHE_DIR")
    return Path(root) / "dk_table.csv" if root else None


def _read_cache(path: Path) -> dict[tuple[int, int], int]:
    table = {}
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return table
    for line in lines[1:]:
        try:
            n, k, d = (int(x) for x in line.split(","))
        except ValueError:
            continue
        table[n, k] = d
    return table


def count_k_derangements(k: int, n: int) -> int:
    """D_k(n), summed over the admissible cycle classes.

    If ``DERANGE_CACHE_DIR`` is set, values are memoized in
    ``dk_table.csv`` there (columns n,k,D).
    """
    if k < 1:
        raise ValueError("k must be positive")
    path = _cache_file()
    if path is not None:
        cached = _read_cache(path).get((n, k))
        if cached is not None:
            return cached
    total = sum(class_size(r) for r in deranged_cycle_types(k, n))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        new = not path.exists()
        with path.open("a") as fh:
            if new:
                fh.write("n,k,D\n")
            fh.write(f"{n},{k},{total}\n")
    return total


@lru_cache(maxsize=None)
def _all_perms(n: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in _itperms(range(n)))


def all_permutations(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic one-line order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds enumeration cap {cap}")
    return _all_perms(n)


def enumerate_k_derangements(k: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Permutation]:
    if k < 1:
        raise ValueError("k must be positive")
    return [p for p in all_permutations(n, cap) if is_k_derangement(p, k)]


def predict_eulerian(k: int, n: int) -> bool:
    """Eulerian prediction for n > 3, 1 <= k < n: k even, or k and n odd."""
    if n <= 3 or not 1 <= k < n:
        raise ValueError(f"prediction needs n > 3 and 1 <= k < n (got n={n}, k={k})")
    return k % 2 == 0 or n % 2 == 1


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out
