import pytest
from hypothesis import strategies as st

from dergraph.permutations import Permutation


@st.composite
def perms(draw, min_n=1, max_n=7, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@pytest.fixture
def cyc():
    """Build a permutation of degree n from cycle notation."""
    from dergraph.permutations import parse_permutation

    return lambda text, n: parse_permutation(text, n)
