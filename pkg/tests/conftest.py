import pytest
from hypothesis import strategies as st

from gtvariety.poly import VarTable

ABCD = VarTable(("a", "b", "c", "d"))


@st.composite
def polynomials(draw, universe=ABCD, max_terms=4, max_exp=2):
    f = universe.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        term = universe.const(draw(st.integers(-4, 4)))
        for name in universe.names:
            e = draw(st.integers(0, max_exp))
            if e:
                term = term * universe.var(name) ** e
        f = f + term
    return f


@pytest.fixture
def abcd():
    return ABCD
