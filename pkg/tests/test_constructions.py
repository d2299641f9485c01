import json
from itertools import combinations, permutations
from math import comb, factorial

import pytest

from dergraph.cayley import rank
from dergraph.constructions import (
    CliqueCertificate,
    ColoringCertificate,
    IndependentSetCertificate,
    MalformedCertificate,
    affine_arrangement,
    build_clique,
    build_independent_set,
    certificate_to_json,
    coset_coloring,
    dumps_certificate,
    frankl_deza_check,
    loads_certificate,
    odd_prime_power,
    theoretical_values,
    verify_clique,
    verify_coloring,
    verify_independent_set,
)
from dergraph.finitefield import FieldSpec
from dergraph.permutations import (
    Permutation,
    compose,
    induced_image,
    inverse,
    is_k_derangement_direct,
)

GF7 = FieldSpec(7)


def zero_last(p: Permutation) -> tuple:
    """Conjugate by point i <-> element i-1 to the labelling 1..6, then 0 written as 7."""
    q = p.n
    phi = lambda i: (i - 1) or q
    phi_inv = lambda j: j % q + 1
    return tuple(phi(p(phi_inv(j))) for j in range(1, q + 1))


def rotations(t):
    return {t[i:] + t[:i] for i in range(len(t))}


def pairwise_adjacent_bruteforce(members, k):
    return all(is_k_derangement_direct(compose(v, inverse(u)), k) for u, v in combinations(members, 2))


def test_affine_examples():
    one, zero = GF7.one(), GF7.zero()
    assert affine_arrangement(one, zero, GF7) == Permutation.identity(7)
    assert zero_last(affine_arrangement(GF7.element(4), zero, GF7)) == (4, 1, 5, 2, 6, 3, 7)
    assert zero_last(affine_arrangement(GF7.element(5), zero, GF7)) == (5, 3, 1, 6, 4, 2, 7)
    with pytest.raises(ValueError):
        affine_arrangement(zero, one, GF7)


def test_worked_example_blocks():
    cert = build_clique(GF7, [1, 4, 5])
    assert len(cert.members) == 21
    listed = set()
    for base in [(1, 2, 3, 4, 5, 6, 7), (4, 1, 5, 2, 6, 3, 7), (5, 3, 1, 6, 4, 2, 7)]:
        listed |= rotations(base)
    assert {zero_last(m) for m in cert.members} == listed
    blocks = [cert.members[i:i + 7] for i in range(0, 21, 7)]
    for block in blocks:
        assert len({frozenset(rotations(zero_last(m))) for m in block}) == 1
    assert verify_clique(cert)
    assert pairwise_adjacent_bruteforce(cert.members, 2)


def test_canonical_half_set_clique_gf7():
    cert = build_clique(GF7)
    assert cert.provenance["T"] == [1, 2, 3]
    assert len(cert.members) == 21 and verify_clique(cert)


@pytest.mark.parametrize("order", [3, 5, 7, 9])
def test_clique_sizes_bruteforce(order):
    cert = build_clique(FieldSpec.for_order(order))
    assert len(cert.members) == comb(order, 2)
    assert verify_clique(cert)
    assert verify_clique(cert, scan=True)
    assert pairwise_adjacent_bruteforce(cert.members, 2)


@pytest.mark.parametrize("order", [3, 5, 7, 9, 25])
def test_block_structure(order):
    spec = FieldSpec.for_order(order)
    cert = build_clique(spec)
    one = spec.one()
    members = set(cert.members)
    for m in cert.members:
        # alpha -> alpha + 1 shifts every value: x -> x + 1 applied after m
        shift = Permutation(tuple((spec.element(v) + one).label for v in m.img))
        assert shift in members
    assert len(cert.members) == spec.order * len(spec.half_set())


def test_invalid_half_sets():
    with pytest.raises(ValueError):
        build_clique(GF7, [1, 6, 2])  # 1 and -1
    with pytest.raises(ValueError):
        build_clique(GF7, [1, 2])
    with pytest.raises(ValueError):
        build_clique(GF7, [0, 1, 2])
    with pytest.raises(ValueError):
        build_clique(GF7, [1, 1, 2])


def test_verify_clique_failures():
    e = Permutation.identity(4)
    v = Permutation.from_cycles([[1, 2], [3, 4]], 4)
    verdict = verify_clique(CliqueCertificate(4, 2, [e, v]))
    assert not verdict
    assert verdict.pair == (0, 1)
    assert verdict.positions == (1, 2) and verdict.elements == (1, 2)
    assert not verify_clique(CliqueCertificate(4, 2, [e, v]), scan=True)
    dup = build_clique(FieldSpec(5))
    dup.members.append(dup.members[3])
    verdict = verify_clique(dup)
    assert not verdict and verdict.reason == "duplicate member" and verdict.pair == (3, 10)
    mixed = CliqueCertificate(4, 2, [e, Permutation.identity(5)])
    assert not verify_clique(mixed)


def test_verify_clique_reports_first_pair():
    cert = build_clique(FieldSpec(5))
    bad = Permutation.from_cycles([[1, 2]], 5)
    cert.members.insert(2, bad)
    verdict = verify_clique(cert)
    first = next((i, j) for i, j in combinations(range(len(cert.members)), 2)
                 if not is_k_derangement_direct(compose(cert.members[j], inverse(cert.members[i])), 2))
    assert verdict.pair == first
    i, j = verdict.pair
    assert induced_image(cert.members[i], verdict.positions) == induced_image(cert.members[j], verdict.positions)


def test_independent_set_examples():
    assert len(build_independent_set(2, 4).members) == 4
    assert len(build_independent_set(2, 5).members) == 12
    assert build_independent_set(1, 2).members == [Permutation.identity(2)]
    with pytest.raises(ValueError):
        build_independent_set(3, 3)


@pytest.mark.parametrize("n", range(2, 7))
def test_independent_sets(n):
    for k in range(1, n):
        cert = build_independent_set(k, n)
        members = cert.members
        assert len(members) == factorial(k) * factorial(n - k)
        assert verify_independent_set(cert)
        group = set(members)
        assert all(compose(a, b) in group for a in members[:10] for b in members)
        assert all(inverse(a) in group for a in members)


def test_verify_independent_set_failures():
    e = Permutation.identity(4)
    c = Permutation.from_cycles([[1, 2, 3, 4]], 4)
    verdict = verify_independent_set(IndependentSetCertificate(4, 2, [e, c]))
    assert not verdict and verdict.pair == (0, 1)
    assert verify_independent_set(IndependentSetCertificate(4, 2, [c]))
    assert not verify_independent_set(IndependentSetCertificate(4, 2, [c, c]))


def test_coloring_examples():
    col = coset_coloring(2, 4)
    assert col.num_colors == 6
    assert sorted(col.color_of.count(c) for c in range(6)) == [4] * 6
    assert col.color_of[0] == 0  # identity -> subset {1,2}, index 0
    assert verify_coloring(col)


def test_coloring_n5_exhaustive():
    col = coset_coloring(2, 5)
    assert col.num_colors == 10
    assert all(col.color_of.count(c) == 12 for c in range(10))
    verts = sorted(map(Permutation, permutations(range(5))))
    for u, v in combinations(verts, 2):
        if is_k_derangement_direct(compose(v, inverse(u)), 2):
            assert col.color_of[rank(u)] != col.color_of[rank(v)]


@pytest.mark.parametrize("n", range(2, 6))
def test_coloring_classes_are_cosets(n):
    for k in range(1, n):
        col = coset_coloring(k, n)
        assert col.num_colors == comb(n, k)
        assert verify_coloring(col)
        h = build_independent_set(k, n).members
        verts = sorted(map(Permutation, permutations(range(n))))
        for sigma in verts[:: max(1, len(verts) // 15)]:
            coset = {rank(compose(sigma, x)) for x in h}
            same = {r for r, c in enumerate(col.color_of) if c == col.color_of[rank(sigma)]}
            assert coset == same


def test_verify_coloring_failures():
    col = coset_coloring(2, 4)
    bad = ColoringCertificate(4, 2, [0] * 24)
    verdict = verify_coloring(bad)
    assert not verdict and verdict.reason == "monochromatic edge"
    assert not verify_coloring(ColoringCertificate(4, 2, col.color_of[:-1]))
    assert not verify_coloring(ColoringCertificate(4, 2, [c + 1 for c in col.color_of]))


def test_frankl_deza():
    assert frankl_deza_check(4, 5, 4)
    assert frankl_deza_check(12, 10, 5)
    assert not frankl_deza_check(13, 10, 5)
    assert frankl_deza_check(1, 1, 3)


def test_theoretical_values():
    tv = theoretical_values(2, 7)
    assert (tv.exact_omega, tv.exact_alpha, tv.exact_chi) == (21, 240, 21)
    tv = theoretical_values(2, 4)
    assert (tv.omega_bound, tv.alpha_lower, tv.chi_upper, tv.exact_omega) == (6, 4, 6, None)
    tv = theoretical_values(1, 2)
    assert (tv.omega_bound, tv.alpha_lower, tv.chi_upper) == (2, 1, 2)
    assert theoretical_values(2, 9).exact_alpha == 2 * factorial(7)
    assert theoretical_values(3, 7).exact_omega is None


def test_odd_prime_power():
    assert odd_prime_power(27) == (3, 3)
    assert odd_prime_power(25) == (5, 2)
    assert odd_prime_power(7) == (7, 1)
    assert all(odd_prime_power(n) is None for n in (1, 2, 4, 6, 8, 15, 45))


def test_certificate_json_roundtrip():
    for cert in (build_clique(FieldSpec(5)), build_independent_set(2, 4), coset_coloring(2, 4)):
        text = dumps_certificate(cert)
        doc = json.loads(text)
        assert doc["type"] == cert.type and doc["n"] == cert.n
        back = loads_certificate(text)
        assert certificate_to_json(back) == certificate_to_json(cert)
    doc = certificate_to_json(build_clique(FieldSpec(5)))
    assert doc["members"][0] == [1, 2, 3, 4, 5]
    assert doc["provenance"]["field"] == {"p": 5, "deg": 1, "modulus": [0, 1]}


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    '{"type": "clique", "n": 3}',
    '{"type": "clique", "n": 3, "k": 2, "members": [[1, 1, 2]]}',
    '{"type": "triangle", "n": 3, "k": 2, "members": []}',
    '{"type": "clique", "n": 0, "k": 2, "members": []}',
])
def test_malformed_certificates(text):
    with pytest.raises(MalformedCertificate):
        loads_certificate(text)
