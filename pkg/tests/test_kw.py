import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtvariety.kw import (
    MatrixPoint,
    UnsolvableComponent,
    elementary_from_minors,
    elementary_from_traces,
    fiber_membership,
    is_strongly_nilpotent,
    kw_campaign,
    kw_map,
    kw_partial,
    newton_consistent,
    random_matrix,
    sample_component_point,
)
from gtvariety.varieties import ComponentSpec, build_gts_ideal, listed_components, upper_variety
from gtvariety.yangian import YangianParams, gamma_generators

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def matrices(draw, max_n=4, zero_rate=0.5):
    n = draw(st.integers(1, max_n))
    rows = [[draw(st.just(Fraction(0)) | rationals) if draw(st.booleans()) or zero_rate < 0.5 else Fraction(0)
             for _ in range(n)] for _ in range(n)]
    return MatrixPoint.from_rows(rows)


def test_text_round_trip():
    X = MatrixPoint.parse("1 -1/2 0; 0 0 3; 2 1 0")
    assert X.n == 3 and X.entry(1, 2) == Fraction(-1, 2)
    assert MatrixPoint.parse(X.format()) == X
    Y = MatrixPoint.parse("1 0; 0 1 | 0 2; 3 0")
    assert Y.p == 2 and Y.entry(2, 1, 2) == 3


def test_kw_examples():
    assert kw_map(MatrixPoint.zero(3)).is_zero()
    ident = MatrixPoint.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert kw_map(ident).chi == ((1,), (2, 2), (3, 3, 3))
    lower = MatrixPoint.from_rows([[0, 0, 0], [1, 0, 0], [1, 1, 0]])
    assert kw_map(lower).is_zero()
    assert kw_partial(ident, 1) == ((3, 3, 3),)
    assert kw_partial(ident, 3) == kw_map(ident).chi
    assert kw_partial(MatrixPoint.zero(3), 1) == ((0, 0, 0),)
    with pytest.raises(ValueError):
        kw_partial(ident, 4)
    with pytest.raises(ValueError):
        kw_map(MatrixPoint.zero(2, 2))


def test_nilpotency_examples():
    assert is_strongly_nilpotent(MatrixPoint.from_rows([[0, 1, 2], [0, 0, 3], [0, 0, 0]]))
    assert not is_strongly_nilpotent(MatrixPoint.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    c3 = MatrixPoint.from_rows([[0, 0, 1], [0, 0, 1], [1, -1, 0]])
    assert is_strongly_nilpotent(c3) and fiber_membership(c3)
    # nilpotent but not strongly nilpotent: the leading 1x1 block is nonzero
    X = MatrixPoint.from_rows([[1, 1], [-1, -1]])
    assert not is_strongly_nilpotent(X) and not fiber_membership(X)


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_fiber_equals_strong_nilpotency(X):
    assert fiber_membership(X) == is_strongly_nilpotent(X)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_newton_consistency(X):
    assert newton_consistent(X)


def test_newton_zero_traces_mean_nilpotent_charpoly():
    traces = [Fraction(0)] * 4
    assert elementary_from_traces(traces) == [0, 0, 0, 0]
    E = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]
    assert elementary_from_minors(E) == [5, 6]


@settings(max_examples=100, deadline=None)
@given(matrices(max_n=3))
def test_kw_map_matches_gamma_polynomials(X):
    gammas = gamma_generators(X.n)
    assert kw_map(X).flat() == [g.evaluate(X) for g in gammas]


@pytest.mark.parametrize("kind", ["strict-lower", "strict-upper"])
def test_triangular_are_strongly_nilpotent(kind):
    rng = random.Random(7)
    for n in range(1, 5):
        for _ in range(50):
            assert is_strongly_nilpotent(random_matrix(n, rng, kind=kind))


def test_component_sampling():
    for comp in listed_components(1) + listed_components(2):
        assert sample_component_point(comp, 0) == MatrixPoint.zero(3, comp.universe.p)
        for seed in (1, 2, 3):
            X = sample_component_point(comp, seed)
            assert all(not g.evaluate(X) for g in comp.gens)
    X = sample_component_point(upper_variety(3), 5)
    assert all(X.entry(i, j) == 0 for i in range(1, 4) for j in range(i, 4))
    assert sample_component_point(listed_components(2)[4], 9) == sample_component_point(listed_components(2)[4], 9)


def test_y1_component_points_are_gt_points():
    I = build_gts_ideal(YangianParams(3, 1), True)
    for comp in listed_components(1):
        for seed in range(1, 30):
            X = sample_component_point(comp, seed)
            assert all(not g.evaluate(X) for g in I.gens)
            assert fiber_membership(X)


def test_unsolvable_component():
    t = YangianParams(2, 1).table()
    comp = ComponentSpec("circle", [t.parse("X11_1^2 + X12_1^2 - 1")])
    with pytest.raises(UnsolvableComponent):
        sample_component_point(comp, 1)


def test_campaigns_are_deterministic():
    a = kw_campaign(300, seed=4, structured=True)
    b = kw_campaign(300, seed=4, structured=True)
    assert a.to_report() == b.to_report() and a.ok
    assert a.in_fiber > 0
