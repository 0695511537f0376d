from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ABCD, polynomials
from gtvariety.poly import (
    Inhomogeneous,
    UniverseMismatch,
    USeries,
    VarTable,
    YangianVarTable,
    parse_polynomial,
)


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f
    assert f - f == ABCD.zero()


@given(polynomials())
def test_text_round_trip(f):
    assert parse_polynomial(str(f), ABCD) == f


@given(polynomials(), st.lists(st.integers(-3, 3), min_size=4, max_size=4), polynomials())
def test_evaluate_is_a_ring_map(f, point, g):
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
    assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)


@given(polynomials())
def test_substitute_zero_matches_evaluate(f):
    assert f.substitute_zero(["a", "c"]).evaluate({"a": 0, "b": 2, "c": 0, "d": -1}) == f.evaluate([0, 2, 0, -1])


def test_parse_examples(abcd):
    f = abcd.parse("3*a^2*b - 1/2*c + 4")
    assert f.coefficient((2, 1, 0, 0)) == 3
    assert f.coefficient((0, 0, 1, 0)) == Fraction(-1, 2)
    assert f.total_degree() == 3
    assert abcd.parse("a*b - b*a") == abcd.zero()


def test_parse_rejects_unknown_variable(abcd):
    with pytest.raises(KeyError):
        abcd.parse("a + z")


def test_universe_mismatch():
    other = VarTable(("a", "b"))
    with pytest.raises(UniverseMismatch):
        ABCD.var("a") + other.var("a")


def test_yangian_table_layout_and_weights():
    t = YangianVarTable.create(3, 2)
    assert len(t) == 18
    assert t.names[t.vid(2, 3, 2)] == "X23_2"
    assert t.triple(t.vid(3, 1, 2)) == (3, 1, 2)
    assert t.x(1, 1, 0) == t.one() and t.x(1, 2, 0) == t.zero()
    assert t.x(1, 1, 3) == t.zero()
    f = t.x(1, 2, 1) * t.x(2, 1, 2)
    assert f.weighted_degree() == 3 and f.total_degree() == 2
    assert f.is_weighted_homogeneous()
    assert not (f + t.x(1, 1, 1)).is_weighted_homogeneous()


def test_rename_and_lift():
    t = YangianVarTable.create(2, 1)
    f = t.x(1, 2, 1) * t.x(2, 1, 1)
    g = f.rename({"X12_1": "X21_1", "X21_1": "X12_1"})
    assert g == f
    big = YangianVarTable.create(3, 1)
    assert str(f.lift(big)) == str(f)
    with pytest.raises(ValueError):
        f.rename({"X12_1": "X21_1"})


def test_u_series_determinant_gl1():
    t = YangianVarTable.create(1, 2)
    s = USeries.matrix_entry(t, 1, 1)
    assert s.degree == 2
    assert s.coeffs[2] == t.one() and s.coeffs[1] == t.x(1, 1, 1)
    sq = s * s
    assert sq.coeffs[0] == t.x(1, 1, 2) ** 2


def test_inhomogeneous_error_is_value_error():
    assert issubclass(Inhomogeneous, ValueError)


@settings(max_examples=50)
@given(polynomials(), polynomials())
def test_variables_of_product(f, g):
    if f and g:
        assert (f * g).variables() <= f.variables() | g.variables()
