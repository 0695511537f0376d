import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gtvariety.groebner import Ideal, ideal_equal
from gtvariety.poly import YangianVarTable
from gtvariety.yangian import (
    FAMILIES,
    YangianParams,
    YoungDiagram,
    closed_form_d_gl3,
    family,
    gamma_generators,
    gt_generator_table,
    gt_generators,
    qdet_coeffs_young,
    qdet_graded_coeffs,
    rewriting_witnesses,
    sigma_generators,
    sigma_universe,
    simplified_generators_gl3,
    simplified_table_gl3,
    young_diagrams,
)


def sympy_qdet(n, p):
    """Coefficients of u^(np-i), i = 1..np, of det X(u) computed by sympy."""
    u = sympy.Symbol("u")
    entries = [
        [sympy.Integer(int(i == j)) * u**p + sum(sympy.Symbol(f"X{i}{j}_{k}") * u ** (p - k) for k in range(1, p + 1))
         for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]
    det = sympy.Poly(sympy.expand(sympy.Matrix(entries).det()), u)
    return [sympy.expand(det.coeff_monomial(u ** (n * p - i))) for i in range(1, n * p + 1)]


def as_sympy(f):
    return sympy.expand(sympy.sympify(str(f).replace("^", "**")))


@pytest.mark.parametrize("n,p", [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_qdet_matches_sympy_determinant(n, p):
    ours = qdet_graded_coeffs(YangianParams(n, p))
    assert [as_sympy(f) for f in ours] == sympy_qdet(n, p)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_young_formula_agrees(n, p):
    params = YangianParams(n, p)
    table = params.table()
    assert qdet_graded_coeffs(params, table) == qdet_coeffs_young(params, table)


def test_qdet_examples():
    t = YangianVarTable.create(1, 2)
    assert qdet_graded_coeffs(YangianParams(1, 2)) == [t.x(1, 1, 1), t.x(1, 1, 2)]
    t = YangianVarTable.create(2, 2)
    d23 = qdet_coeffs_young(YangianParams(2, 2))[2]
    assert d23 == t.parse("X11_1*X22_2 + X11_2*X22_1 - X12_1*X21_2 - X12_2*X21_1")
    t = YangianVarTable.create(3, 1)
    assert qdet_graded_coeffs(YangianParams(3, 1))[0] == t.parse("X11_1 + X22_1 + X33_1")


def test_young_diagrams_enumeration():
    diagrams = young_diagrams(2, 3, 2)
    assert [d.parts for d in diagrams] == [(2, 1)]
    assert YoungDiagram((2, 1)).rearrangements() == [(2, 1), (1, 2)]
    assert YoungDiagram((1, 1)).rearrangements() == [(1, 1)]
    with pytest.raises(ValueError):
        YoungDiagram((1, 2))


@pytest.mark.parametrize("n,p,count,nvars", [(3, 1, 6, 9), (2, 2, 6, 8), (1, 4, 4, 4), (3, 2, 12, 18)])
def test_gt_generator_counts(n, p, count, nvars):
    gens = gt_generators(YangianParams(n, p))
    assert len(gens) == count
    assert len(gens[0].universe) == nvars


@pytest.mark.parametrize("n,p", [(2, 3), (3, 2), (4, 1)])
def test_weighted_degrees(n, p):
    for (i, j), f in gt_generator_table(YangianParams(n, p)).items():
        assert f.is_weighted_homogeneous() and f.weighted_degree() == j


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_closed_forms_equal_determinant(p):
    assert closed_form_d_gl3(p) == gt_generators(YangianParams(3, p))


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_rewriting_witnesses_hold(p):
    bad = [w.label for w in rewriting_witnesses(p) if not w.holds()]
    assert bad == []


def test_simplified_examples():
    t = YangianVarTable.create(3, 1)
    P = simplified_table_gl3(1, t)
    assert P[3, 3] == t.parse("X12_1*X23_1*X31_1 + X13_1*X21_1*X32_1")
    assert P[2, 1] == t.x(2, 2, 1)
    t2 = YangianVarTable.create(3, 2)
    assert simplified_table_gl3(2, t2)[2, 2] == t2.parse("X22_2 - X12_1*X21_1")


LEVEL_TWO_LISTING = [
    "X11_1", "X11_2", "X22_1", "X22_2 - X12_1*X21_1", "X12_1*X21_2 + X12_2*X21_1", "X12_2*X21_2",
    "X33_1", "X33_2 - X23_1*X32_1 - X13_1*X31_1",
    "X12_1*X23_1*X31_1 + X13_1*X21_1*X32_1 - X13_1*X31_2 - X23_1*X32_2 - X13_2*X31_1 - X23_2*X32_1"
    " - X13_1*X22_1*X31_1",
    "-X23_2*X32_2 - X13_2*X31_2 - X13_1*X22_1*X31_2 + X12_1*X23_1*X31_2 + X13_1*X21_1*X32_2"
    " - X13_1*X22_2*X31_1 + X12_1*X23_2*X31_1 + X13_1*X21_2*X32_1 - X13_2*X22_1*X31_1"
    " + X12_2*X23_1*X31_1 + X13_2*X21_1*X32_1",
    "-X13_1*X22_2*X31_2 + X12_1*X23_2*X31_2 + X13_1*X21_2*X32_2 - X13_2*X22_1*X31_2"
    " + X12_2*X23_1*X31_2 + X13_2*X21_1*X32_2 - X13_2*X22_2*X31_1 + X12_2*X23_2*X31_1 + X13_2*X21_2*X32_1",
    "-X13_2*X22_2*X31_2 + X12_2*X23_2*X31_2 + X13_2*X21_2*X32_2",
]


def test_level_two_listing_generates_same_ideal():
    # Both lists contain X22_1 and differ generator by generator by multiples
    # of it, which proves the two ideals coincide without a Groebner basis.
    t = YangianVarTable.create(3, 2)
    listed = [t.parse(s) for s in LEVEL_TWO_LISTING]
    ours = simplified_generators_gl3(2, t)
    x22 = t.x(2, 2, 1)
    assert x22 in listed and x22 in ours
    for a, b in zip(ours, listed):
        diff = a - b
        assert all(m[t.vid(2, 2, 1)] >= 1 for m in diff.terms)


def test_sigma_examples():
    U = sigma_universe(3)
    s32, s33 = sigma_generators(3, U)
    assert s32 == U.parse("X31_1*X13_1 + X32_1*X23_1")
    assert s33 == U.parse("X32_1*X21_1*X13_1")
    assert sigma_generators(2) == [sigma_universe(2).parse("X21_1*X12_1")]
    with pytest.raises(ValueError):
        sigma_generators(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sigma_ambient_size(n):
    assert len(sigma_universe(n)) == (n + 2) * (n - 1) // 2
    for j, f in enumerate(sigma_generators(n), start=2):
        assert f.total_degree() == j and f.is_weighted_homogeneous()


def test_gamma_examples():
    t = YangianVarTable.create(2, 1)
    g = gamma_generators(2)
    assert len(g) == 3
    assert g[2] == t.parse("X11_1^2 + 2*X12_1*X21_1 + X22_1^2")


@pytest.mark.parametrize("n", [2, 3])
def test_gt_level_one_is_gl_n_variety(n):
    assert ideal_equal(Ideal(gt_generators(YangianParams(n, 1))), Ideal(gamma_generators(n)))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(2, 3), st.integers(1, 2))
def test_families_are_homogeneous(name, n, p):
    if name in ("p-gl3", "d-closed-gl3"):
        n = 3
    for f in family(name, n, p):
        assert f.is_weighted_homogeneous()


def test_unknown_family():
    with pytest.raises(ValueError):
        family("nope", 2, 1)


def test_bad_params():
    with pytest.raises(ValueError):
        YangianParams(0, 1)
