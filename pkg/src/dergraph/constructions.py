"""Cliques from affine maps over GF(q), the set-stabilizer independent
set, the coset colouring, and verifiers for all three certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations as _itperms
from math import comb, factorial

import numpy as np

from .cayley import EXPLICIT_CAP, CayleyGraph, perm_table
from .enumeration import CapExceeded
from .finitefield import FieldElement, FieldSpec
from .permutations import (
    Permutation,
    compose,
    induced_image,
    inverse,
    is_k_derangement,
    k_subsets,
)


class MalformedCertificate(ValueError):
    pass


@dataclass
class CliqueCertificate:
    n: int
    k: int
    members: list[Permutation]
    provenance: dict = field(default_factory=dict)
    type = "clique"


@dataclass
class IndependentSetCertificate:
    n: int
    k: int
    members: list[Permutation]
    provenance: dict = field(default_factory=dict)
    type = "independent_set"


@dataclass
class ColoringCertificate:
    """``color_of[r]`` is the colour of the vertex with rank ``r``."""

    n: int
    k: int
    color_of: list[int]
    provenance: dict = field(default_factory=dict)
    type = "coloring"

    @property
    def num_colors(self) -> int:
        return len(set(self.color_of))


@dataclass
class Verdict:
    """Outcome of a certificate check.

    On failure ``pair`` holds the offending member indices (or vertex
    ranks, for colourings) and, where relevant, ``positions`` is a
    k-subset of positions holding the same elements in both members.
    """

    ok: bool
    reason: str = ""
    pair: tuple[int, int] | None = None
    positions: tuple[int, ...] | None = None
    elements: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "valid"
        msg = self.reason
        if self.pair is not None:
            msg += f"; pair {self.pair[0]},{self.pair[1]}"
        if self.positions is not None:
            msg += f"; positions {list(self.positions)} hold elements {list(self.elements)} in both"
        return msg


# -- constructions -----------------------------------------------------------


def affine_arrangement(s: FieldElement, alpha: FieldElement, spec: FieldSpec) -> Permutation:
    """The arrangement x -> s*x + alpha applied to the elements in label order.

    Entry i (1-based) is label(s * e + alpha) + 1, where e has label i-1.
    """
    if s.is_zero():
        raise ValueError("slope must be nonzero")
    return Permutation(tuple((s * e + alpha).label for e in spec.elements()))


def _check_half_set(spec: FieldSpec, t: list[FieldElement]):
    labels = [e.label for e in t]
    if len(set(labels)) != len(labels):
        raise ValueError("T contains repeated elements")
    if len(t) != (spec.order - 1) // 2:
        raise ValueError(f"T must have {(spec.order - 1) // 2} elements, got {len(t)}")
    for e in t:
        if e.is_zero():
            raise ValueError("T must not contain 0")
        if (-e).label in labels:
            raise ValueError(f"T contains both {e.label} and its negative {(-e).label}")


def build_clique(spec: FieldSpec, t=None) -> CliqueCertificate:
    """Clique of size C(q, 2) in Gamma_{2,q}: {x -> s*x + a : s in T, a in GF(q)}.

    ``t`` may be labels or field elements; it defaults to the canonical
    half-set.  Members are grouped in blocks, one per slope.
    """
    if t is None:
        t = spec.half_set()
    else:
        t = [x if isinstance(x, FieldElement) else spec.element(int(x)) for x in t]
    _check_half_set(spec, t)
    elems = spec.elements()
    members = [affine_arrangement(s, a, spec) for s in t for a in elems]
    prov = {
        "construction": "affine",
        "field": spec.to_json(),
        "T": [s.label for s in t],
        "base": "label-order",
    }
    return CliqueCertificate(spec.order, 2, members, prov)


def build_independent_set(k: int, n: int) -> IndependentSetCertificate:
    """Stabilizer of {1..k}: all of S_k x S_{n-k}, in lexicographic order."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    members = []
    for low in _itperms(range(k)):
        for high in _itperms(range(k, n)):
            members.append(Permutation(low + high))
    members.sort()
    return IndependentSetCertificate(n, k, members, {"construction": "set-stabilizer", "subset": list(range(1, k + 1))})


def coset_coloring(k: int, n: int) -> ColoringCertificate:
    """Colour each vertex by the lexicographic index of its image of {1..k}."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if n > EXPLICIT_CAP:
        raise CapExceeded(f"colouring needs n <= {EXPLICIT_CAP}")
    index = {s: i for i, s in enumerate(k_subsets(n, k))}
    table = perm_table(n)
    head = np.sort(table[:, :k], axis=1) + 1
    colors = [index[tuple(int(x) for x in row)] for row in head]
    return ColoringCertificate(n, k, colors, {"construction": "coset", "subset": list(range(1, k + 1))})


# -- verification -----------------------------------------------------------


def agreeing_subset(u: Permutation, v: Permutation, k: int):
    """First k-subset of positions whose elements coincide in u and v, or None."""
    for s in k_subsets(u.n, k):
        img = induced_image(u, s)
        if img == induced_image(v, s):
            return s, img
    return None


def _check_degrees(members, n):
    for i, m in enumerate(members):
        if m.n != n:
            return Verdict(False, f"member {i} has degree {m.n}, expected {n}")
    return None


def _duplicates(members):
    seen = {}
    for j, m in enumerate(members):
        if m in seen:
            return Verdict(False, "duplicate member", (seen[m], j))
        seen[m] = j
    return None


def verify_clique(cert: CliqueCertificate, scan: bool = False) -> Verdict:
    """Check that members are distinct and pairwise adjacent.

    With ``scan=True`` each pair is checked by the k-subset position
    scan instead of the cycle-type test on the quotient.
    """
    members, k = cert.members, cert.k
    bad = _check_degrees(members, cert.n)
    if bad is None:
        bad = _duplicates(members)
    if bad is not None:
        return bad
    inverses = [inverse(m) for m in members]
    for i, j in combinations(range(len(members)), 2):
        u, v = members[i], members[j]
        if scan:
            hit = agreeing_subset(u, v, k)
            ok = hit is None
        else:
            ok = is_k_derangement(compose(v, inverses[i]), k)
            hit = None if ok else agreeing_subset(u, v, k)
        if not ok:
            pos, el = hit if hit else (None, None)
            return Verdict(False, "members not adjacent", (i, j), pos, el)
    return Verdict(True)


def verify_independent_set(cert: IndependentSetCertificate) -> Verdict:
    members, k = cert.members, cert.k
    bad = _check_degrees(members, cert.n)
    if bad is None:
        bad = _duplicates(members)
    if bad is not None:
        return bad
    inverses = [inverse(m) for m in members]
    for i, j in combinations(range(len(members)), 2):
        if is_k_derangement(compose(members[j], inverses[i]), k):
            return Verdict(False, "members adjacent", (i, j))
    return Verdict(True)


def verify_coloring(cert: ColoringCertificate, max_colors: int | None = None) -> Verdict:
    """Totality, range and properness over every edge of Gamma_{k,n}."""
    n, k = cert.n, cert.k
    if n > EXPLICIT_CAP:
        return Verdict(False, f"colouring verification needs n <= {EXPLICIT_CAP}")
    if len(cert.color_of) != factorial(n):
        return Verdict(False, f"expected {factorial(n)} colours, got {len(cert.color_of)}")
    limit = comb(n, k) if max_colors is None else max_colors
    colors = np.asarray(cert.color_of, dtype=np.int64)
    out = np.flatnonzero((colors < 0) | (colors >= limit))
    if out.size:
        return Verdict(False, f"vertex {int(out[0])} has colour outside [0, {limit})")
    g = CayleyGraph(n, k, mode="implicit")
    nbr = g.neighbor_ranks(np.arange(g.vertex_count))
    clash = colors[:, None] == colors[nbr]
    if clash.any():
        u, s = map(int, np.argwhere(clash)[0])
        v = int(nbr[u, s])
        return Verdict(False, "monochromatic edge", (min(u, v), max(u, v)))
    return Verdict(True)


def verify(cert) -> Verdict:
    if isinstance(cert, CliqueCertificate):
        return verify_clique(cert)
    if isinstance(cert, IndependentSetCertificate):
        return verify_independent_set(cert)
    if isinstance(cert, ColoringCertificate):
        return verify_coloring(cert)
    raise TypeError(f"not a certificate: {type(cert).__name__}")


# -- bounds ------------------------------------------------------------------


def frankl_deza_check(alpha_value: int, omega_value: int, n: int) -> bool:
    return alpha_value * omega_value <= factorial(n)


def odd_prime_power(n: int) -> tuple[int, int] | None:
    """(p, d) with n == p**d and p an odd prime, else None."""
    if n < 3 or n % 2 == 0:
        return None
    p = next(d for d in range(3, n + 1, 2) if n % d == 0)
    d = 0
    while n % p == 0:
        n //= p
        d += 1
    return (p, d) if n == 1 else None


@dataclass(frozen=True)
class TheoreticalValues:
    k: int
    n: int
    omega_bound: int
    alpha_lower: int
    chi_upper: int
    exact_omega: int | None = None
    exact_alpha: int | None = None
    exact_chi: int | None = None


def theoretical_values(k: int, n: int) -> TheoreticalValues:
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    c = comb(n, k)
    vals = dict(k=k, n=n, omega_bound=c, alpha_lower=factorial(k) * factorial(n - k), chi_upper=c)
    if k == 2 and odd_prime_power(n):
        vals.update(exact_omega=c, exact_alpha=2 * factorial(n - 2), exact_chi=c)
    return TheoreticalValues(**vals)


# -- JSON ------------------------------------------------------------------


def certificate_to_json(cert) -> dict:
    doc = {"type": cert.type, "n": cert.n, "k": cert.k}
    if isinstance(cert, ColoringCertificate):
        doc["color_of"] = list(cert.color_of)
    else:
        doc["members"] = [m.one_line() for m in cert.members]
    doc["provenance"] = cert.provenance
    return doc


def dumps_certificate(cert) -> str:
    return json.dumps(certificate_to_json(cert), separators=(",", ":"), sort_keys=True) + "\n"


def certificate_from_json(doc):
    """Rebuild a certificate; anything structurally wrong raises MalformedCertificate."""
    try:
        if not isinstance(doc, dict):
            raise MalformedCertificate("certificate must be a JSON object")
        kind = doc["type"]
        n, k = int(doc["n"]), int(doc["k"])
        if n < 1 or k < 1:
            raise MalformedCertificate("n and k must be positive")
        prov = doc.get("provenance") or {}
        if kind == "coloring":
            colors = [int(c) for c in doc["color_of"]]
            return ColoringCertificate(n, k, colors, prov)
        members = [Permutation.from_one_line(m) for m in doc["members"]]
        if kind == "clique":
            return CliqueCertificate(n, k, members, prov)
        if kind == "independent_set":
            return IndependentSetCertificate(n, k, members, prov)
        raise MalformedCertificate(f"unknown certificate type {kind!r}")
    except MalformedCertificate:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(str(exc)) from exc


def loads_certificate(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"invalid JSON: {exc}") from exc
    return certificate_from_json(doc)
