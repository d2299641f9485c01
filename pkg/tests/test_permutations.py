from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from dergraph.permutations import (
    Permutation,
    compose,
    cycle_type,
    has_subpartition,
    induced_image,
    inverse,
    is_k_derangement,
    is_k_derangement_direct,
    parse_permutation,
)

from conftest import perms

e4 = Permutation.identity(4)


def test_parse_cycles_and_one_line(cyc):
    assert cyc("(1 2 3)(4)", 4).one_line() == [2, 3, 1, 4]
    assert parse_permutation("2,3,1,4,5").one_line() == [2, 3, 1, 4, 5]
    assert parse_permutation("[2, 1]").one_line() == [2, 1]
    assert cyc("()", 3) == Permutation.identity(3)
    assert str(cyc("(2 4)", 4)) == "(2 4)"


@pytest.mark.parametrize("bad", ["(1 2)(2 3)", "(1 5)", "(1 2", "x(1 2)"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_permutation(bad, 4)


def test_not_a_bijection():
    with pytest.raises(ValueError):
        Permutation.from_one_line([1, 1, 2])
    with pytest.raises(ValueError):
        Permutation(())


def test_compose_examples(cyc):
    s = cyc("(1 3 2 4)", 4)
    assert compose(e4, s) == s
    assert compose(cyc("(1 2)", 4), cyc("(1 2)", 4)) == e4
    c = cyc("(1 2 3 4)", 4)
    assert compose(c, c) == cyc("(1 3)(2 4)", 4)


def test_compose_right_argument_first(cyc):
    a, b = cyc("(1 2)", 3), cyc("(2 3)", 3)
    ab = compose(a, b)
    assert all(ab(i) == a(b(i)) for i in range(1, 4))


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), e4)


def test_inverse_examples(cyc):
    assert inverse(e4) == e4
    assert inverse(cyc("(1 2 3)", 3)) == cyc("(1 3 2)", 3)
    c = cyc("(1 2 3 4)", 4)
    assert inverse(c) == cyc("(1 4 3 2)", 4)
    assert compose(c, inverse(c)) == e4


def test_cycle_type_examples(cyc):
    assert cycle_type(cyc("(1 2)(3)(4 5)", 5)) == (2, 2, 1)
    assert cycle_type(Permutation.identity(5)) == (1, 1, 1, 1, 1)
    assert cycle_type(cyc("(1 2 3 4)", 4)) == (4,)


def test_induced_image_table(cyc):
    c = cyc("(1 2 3 4)", 4)
    table = {(1, 2): (2, 3), (1, 3): (2, 4), (1, 4): (1, 2),
             (2, 3): (3, 4), (2, 4): (1, 3), (3, 4): (1, 4)}
    for s, img in table.items():
        assert induced_image(c, s) == img
    assert all(induced_image(e4, s) == s for s in combinations(range(1, 5), 2))
    with pytest.raises(ValueError):
        induced_image(c, (1, 5))


def test_direct_predicate_examples(cyc):
    assert is_k_derangement_direct(cyc("(1 2 3 4)", 4), 2)
    assert not is_k_derangement_direct(e4, 2)
    assert not is_k_derangement_direct(cyc("(1 2)", 4), 3)
    assert is_k_derangement_direct(cyc("(1 2)(3 4)", 4), 3)
    # k > n is vacuous, k = n never holds
    assert is_k_derangement_direct(e4, 5)
    assert not is_k_derangement_direct(cyc("(1 2 3 4)", 4), 4)


def test_has_subpartition_examples():
    assert has_subpartition((2, 1, 1), 3)
    assert not has_subpartition((2, 2), 3)
    assert has_subpartition((5, 3), 0)
    assert has_subpartition((3, 3, 1), 7)
    assert not has_subpartition((3, 3, 1), 5)


@given(st.lists(st.integers(1, 6), max_size=8), st.integers(0, 20))
def test_has_subpartition_matches_bruteforce(parts, k):
    sums = {sum(c) for r in range(len(parts) + 1) for c in combinations(parts, r)}
    assert has_subpartition(parts, k) == (k in sums)


def test_cycle_predicate_examples(cyc):
    assert is_k_derangement(cyc("(1 2 3)(4)", 4), 2)
    assert not is_k_derangement(cyc("(1 2)(3 4)", 4), 2)
    assert not is_k_derangement_direct(cyc("(1 2)(3 4)", 4), 2)
    for p in permutations(range(4)):
        assert not is_k_derangement(Permutation(p), 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_predicates_agree_exhaustively(n):
    for p in permutations(range(n)):
        sigma = Permutation(p)
        for k in range(1, n + 2):
            assert is_k_derangement(sigma, k) == is_k_derangement_direct(sigma, k), (sigma, k)


@given(perms(max_n=7), st.integers(1, 8))
def test_inverse_closure(sigma, k):
    assert is_k_derangement(sigma, k) == is_k_derangement(inverse(sigma), k)


@given(st.data(), st.integers(1, 7))
def test_conjugation_invariance(data, n):
    sigma = data.draw(perms(n=n))
    tau = data.draw(perms(n=n))
    conj = compose(compose(tau, sigma), inverse(tau))
    assert cycle_type(conj) == cycle_type(sigma)
    for k in range(1, n + 1):
        assert is_k_derangement(conj, k) == is_k_derangement(sigma, k)


@pytest.mark.parametrize("n", range(2, 8))
def test_complement_symmetry(n):
    for p in permutations(range(n)):
        sigma = Permutation(p)
        for k in range(1, n):
            assert is_k_derangement(sigma, k) == is_k_derangement(sigma, n - k)


@settings(max_examples=200)
@given(st.data(), st.integers(1, 7))
def test_group_laws(data, n):
    a, b, c = (data.draw(perms(n=n)) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert inverse(inverse(a)) == a
    assert compose(inverse(a), a) == Permutation.identity(n)
