"""Arithmetic in GF(p^d) for odd primes p.

Polynomials over Z_p are coefficient tuples, constant term first.  An
element of GF(p^d) is a residue polynomial of degree < d, and its
*label* is the base-p integer sum(coeffs[i] * p**i).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class CharacteristicTwoError(ValueError):
    """GF(2^d) has x = -x for every x, so no half-set exists."""


def isprime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def poly_divmod(a, b, p):
    a = list(_trim(a))
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        q[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a = list(_trim(a))
    return _trim(q), tuple(a)


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_sub(a, b, p):
    m = max(len(a), len(b))
    a = tuple(a) + (0,) * (m - len(a))
    b = tuple(b) + (0,) * (m - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def _monic(deg, p):
    """Monic polynomials of degree ``deg``, lexicographic from the x^(deg-1) coefficient down."""
    for high_first in product(range(p), repeat=deg):
        yield tuple(reversed(high_first)) + (1,)


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic(d, p):
            if not poly_divmod(poly, f, p)[1]:
                return False
    return True


def find_irreducible(p: int, deg: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``deg`` over Z_p.

    Candidates are compared by their coefficients from x^(deg-1) down to
    the constant term.  For deg == 1 this is plain ``x``.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if deg < 1:
        raise ValueError("degree must be positive")
    for f in _monic(deg, p):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldSpec:
    """GF(p^deg) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, deg: int = 1, modulus=None):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise CharacteristicTwoError("characteristic 2 is not supported")
        if deg < 1:
            raise ValueError("degree must be positive")
        if modulus is None:
            modulus = find_irreducible(p, deg)
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(modulus)) != deg + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {deg}: {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over Z_{p}")
        self.p = p
        self.deg = deg
        self.modulus = modulus
        self.order = p**deg

    @classmethod
    def for_order(cls, order: int, modulus=None) -> "FieldSpec":
        """Field of the given prime-power order."""
        for p in range(2, order + 1):
            if order % p == 0:
                break
        else:
            raise ValueError(f"{order} is not a prime power")
        deg, rest = 0, order
        while rest % p == 0:
            rest //= p
            deg += 1
        if rest != 1:
            raise ValueError(f"{order} is not a prime power")
        return cls(p, deg, modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.deg, self.modulus) == (other.p, other.deg, other.modulus)

    def __hash__(self):
        return hash((self.p, self.deg, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, deg={self.deg}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "deg": self.deg, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, doc: dict) -> "FieldSpec":
        return cls(int(doc["p"]), int(doc["deg"]), doc.get("modulus"))

    def element(self, label: int) -> "FieldElement":
        if not 0 <= label < self.order:
            raise ValueError(f"label {label} out of range for GF({self.order})")
        coeffs = []
        for _ in range(self.deg):
            label, c = divmod(label, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    def elements(self) -> list["FieldElement"]:
        return [self.element(i) for i in range(self.order)]

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def _reduce(self, poly) -> tuple[int, ...]:
        rem = poly_divmod(poly, self.modulus, self.p)[1]
        return tuple(rem) + (0,) * (self.deg - len(rem))

    def add(self, a, b):
        return FieldElement(self, tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a):
        return FieldElement(self, tuple(-x % self.p for x in a.coeffs))

    def mul(self, a, b):
        return FieldElement(self, self._reduce(poly_mul(_trim(a.coeffs), _trim(b.coeffs), self.p)))

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        # extended Euclid on (modulus, a)
        r0, r1 = self.modulus, _trim(a.coeffs)
        s0, s1 = (), (1,)
        while r1:
            q, r = poly_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, self.p), self.p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, self.p)
        return FieldElement(self, self._reduce(tuple(x * c % self.p for x in s0)))

    def half_set(self) -> list["FieldElement"]:
        """From each pair {x, -x} of nonzero elements, the one with smaller label."""
        return [e for e in self.elements()[1:] if e.label < (-e).label]


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def label(self) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.p + c
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return self.field.add(self, other)

    def __neg__(self):
        return self.field.neg(self)

    def __sub__(self, other):
        return self.field.add(self, self.field.neg(other))

    def __mul__(self, other):
        return self.field.mul(self, other)

    def inverse(self):
        return self.field.inv(self)

    def __repr__(self):
        return f"GF({self.field.order})[{self.label}]"


def add(a, b, spec):
    return spec.add(a, b)


def neg(a, spec):
    return spec.neg(a)


def mul(a, b, spec):
    return spec.mul(a, b)


def inv(a, spec):
    return spec.inv(a)


def elements(spec):
    return spec.elements()


def half_set(spec):
    return spec.half_set()
