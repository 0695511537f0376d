import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import ABCD, polynomials
from gtvariety.groebner import (
    Budget,
    BudgetExceeded,
    Ideal,
    ImproperIdeal,
    MonomialOrder,
    buchberger,
    eliminate,
    ideal_equal,
    ideal_intersection,
    ideal_membership,
    krull_dimension,
    min_hitting_set,
    normal_form,
    radical_membership,
)
from gtvariety.poly import VarTable

SYMS = sympy.symbols("a b c d")


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"), locals={s.name: s for s in SYMS})


def sympy_reduced(gens, order):
    G = sympy.groebner([to_sympy(g) for g in gens], *SYMS, order=order)
    return sorted(str(sympy.expand(e / sympy.Poly(e, *SYMS).LC(order=order))) for e in G.exprs)


nonzero_gens = st.lists(polynomials(max_terms=3), min_size=1, max_size=3).filter(lambda gs: any(gs))


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(nonzero_gens, st.sampled_from([("lex", "lex"), ("degrevlex", "grevlex")]))
def test_reduced_basis_matches_sympy(gens, orders):
    ours, theirs = orders
    G = buchberger(Ideal(gens, ABCD), ours)
    assert sorted(str(sympy.expand(to_sympy(g))) for g in G.basis) == sympy_reduced(gens, theirs)


@settings(max_examples=40, deadline=None)
@given(nonzero_gens, polynomials(), polynomials())
def test_combinations_are_members(gens, u, v):
    I = Ideal(gens, ABCD)
    G = buchberger(I)
    combo = u * gens[0] + v * gens[-1]
    assert not normal_form(combo, G)
    assert ideal_membership(combo, I, basis=G)


@settings(max_examples=40, deadline=None)
@given(nonzero_gens)
def test_basis_is_reduced_and_monic(gens):
    G = buchberger(Ideal(gens, ABCD))
    lms = G.leading_monomials()
    key = G.order.key
    assert lms == sorted(lms, key=key, reverse=True)
    for g, m in zip(G.basis, lms):
        assert g.coefficient(m) == 1
        others = [h for h in G.basis if h is not g]
        if others:
            # no term of g is divisible by another leading monomial
            for t in g.terms:
                assert not any(all(x <= y for x, y in zip(lm, t)) for lm in (G.leading_monomials()) if lm != m)


@settings(max_examples=30, deadline=None)
@given(nonzero_gens)
def test_dimension_independent_of_order(gens):
    I = Ideal(gens, ABCD)
    try:
        dims = {krull_dimension(I, o).dim for o in ("lex", "degrevlex")}
    except ImproperIdeal:
        return
    assert len(dims) == 1


def test_dimension_examples(abcd):
    a, b, c, d = (abcd.var(x) for x in "abcd")
    assert krull_dimension(Ideal([a * b, a * c], abcd)).dim == 3
    assert krull_dimension(Ideal([a, b, c, d], abcd)).dim == 0
    assert krull_dimension(Ideal([a * b - c * d], abcd)).dim == 3
    with pytest.raises(ImproperIdeal):
        krull_dimension(Ideal([a, a - 1], abcd))


def test_radical_membership(abcd):
    a, b = abcd.var("a"), abcd.var("b")
    I = Ideal([a**3, b**2 * a], abcd)
    assert radical_membership(a, I)
    assert not ideal_membership(a, I)
    assert not radical_membership(b, I)


def test_elimination(abcd):
    a, b, c = (abcd.var(x) for x in "abc")
    # twisted cubic style: b = a^2, c = a^3 ; eliminating a leaves b^3 - c^2
    J = eliminate(Ideal([b - a**2, c - a**3], abcd), ["a"])
    small = J.universe
    assert "a" not in small.names
    assert ideal_equal(J, Ideal([small.parse("b^3 - c^2")], small))


def test_intersection(abcd):
    a, b = abcd.var("a"), abcd.var("b")
    K = ideal_intersection(Ideal([a], abcd), Ideal([b], abcd))
    assert ideal_equal(K, Ideal([a * b], abcd))


def test_budget_exceeded_is_distinct(abcd):
    gens = [abcd.parse(s) for s in ("a^2 - b*c", "a*b - c*d", "b^2 - a*d + c")]
    with pytest.raises(BudgetExceeded):
        buchberger(Ideal(gens, abcd), budget=Budget(reductions=1))


def test_elim_order_puts_block_first(abcd):
    order = MonomialOrder.for_universe("elim", abcd, block=["a"])
    assert order.key((1, 0, 0, 0)) > order.key((0, 5, 5, 5))


def test_variable_generators_peel_off(abcd):
    a, b, c = (abcd.var(x) for x in "abc")
    G = buchberger(Ideal([3 * c, b * c**2 + a * b - 1], abcd), "lex")
    assert sorted(str(g) for g in G.basis) == ["a*b - 1", "c"]


def test_min_hitting_set():
    sets = [frozenset({0, 1}), frozenset({1, 2}), frozenset({3})]
    assert len(min_hitting_set(sets)) == 2


def test_weighted_order_prefers_weight():
    U = VarTable(("x", "y"), (1, 2))
    order = MonomialOrder.for_universe("wdegrevlex", U)
    assert order.key((0, 1)) > order.key((1, 0))
