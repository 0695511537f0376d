"""The ten acceptance checks, each timed and printed as one PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` (or ``scripts/run_acceptance.py``).
"""
import time

import pytest

from gtvariety.groebner import Budget, BudgetExceeded, Ideal, ideal_equal, krull_dimension
from gtvariety.kw import kw_campaign
from gtvariety.varieties import (
    build_gts_ideal,
    check_complete_intersection,
    check_lemma_membership,
    gts_piece,
    lemma_cases,
    listed_components,
    sigma_ideal,
    top_route,
    verify_decomposition,
    weak_decomposition,
    weak_route,
)
from gtvariety.yangian import (
    YangianParams,
    closed_form_d_gl3,
    gamma_generators,
    gt_generators,
    qdet_coeffs_young,
    qdet_graded_coeffs,
    rewriting_witnesses,
)


def young_matches_determinant():
    for n in (1, 2, 3):
        for p in (1, 2, 3):
            params = YangianParams(n, p)
            table = params.table()
            assert qdet_graded_coeffs(params, table) == qdet_coeffs_young(params, table), (n, p)
    return "9 (n, p) pairs"


def closed_forms_and_witnesses():
    count = 0
    for p in (1, 2, 3):
        assert closed_form_d_gl3(p) == gt_generators(YangianParams(3, p)), p
        bad = [w.label for w in rewriting_witnesses(p) if not w.holds()]
        assert not bad, (p, bad)
        count += len(rewriting_witnesses(p))
    return f"{count} witnesses"


def y1_gl3_decomposition():
    I = build_gts_ideal(YangianParams(3, 1), simplified=True)
    assert krull_dimension(I).dim == 3
    rep = verify_decomposition(I, listed_components(1), expected_dim=3, target="Y1gl3")
    assert rep.verdict == "pass", rep.render()
    assert len(rep.components) == 7 and rep.dims == [3] * 7
    return "dim 3, 7 components, covering by intersection"


def gl2_complete_intersection():
    dims = []
    for p in (1, 2, 3, 4):
        res = check_complete_intersection(build_gts_ideal(YangianParams(2, p)))
        assert res.is_ci and res.dimension.dim == p, (p, res.to_report())
        dims.append(res.dimension.dim)
    return f"dims {dims}"


def y2_gl3_decomposition():
    I = build_gts_ideal(YangianParams(3, 2), simplified=True)
    comps = listed_components(2)
    rep = verify_decomposition(I, comps, mode="containment-only", expected_dim=6,
                               samples_per_component=100, target="Y2gl3")
    assert rep.verdict == "pass", rep.render()
    assert len(comps) == 22 and rep.dims == [6] * 22
    assert rep.samples["points"] >= 100 * 22
    try:
        dim = krull_dimension(I, budget=Budget(reductions=2000)).dim
    except BudgetExceeded:
        direct = "direct dim: budget"
    else:
        assert dim == 6
        direct = "direct dim 6"
    return f"22 components dim 6, {rep.samples['points']} sample points, {direct}"


def sigma_complete_intersection():
    for n in (2, 3, 4):
        res = check_complete_intersection(sigma_ideal(n))
        assert res.is_ci and res.dimension.dim == n * (n - 1) // 2, (n, res.to_report())
    return "n = 2, 3, 4"


def weak_version_instances():
    for p in (1, 2):
        res = check_complete_intersection(gts_piece(YangianParams(3, p), 1).ideal())
        assert res.is_ci and res.dimension.dim == 3 * p, (p, res.to_report())
    params = YangianParams(3, 3)
    pieces = weak_decomposition(params)
    rep = verify_decomposition(gts_piece(params, 1).ideal(), pieces, mode="containment-only",
                               compute_dims=False, target="weak p=3")
    assert rep.verdict == "pass", rep.render()
    routes = [weak_route(params, 1, s) for s in range(1, 5)] + [weak_route(params, 2, s) for s in range(2, 5)]
    assert all(r.exact and r.equal for r in routes), [r.name for r in routes if not (r.exact and r.equal)]
    assert check_complete_intersection(build_gts_ideal(YangianParams(2, 3))).is_ci
    top = top_route(params)
    assert top.equal
    assert check_complete_intersection(gts_piece(YangianParams(3, 2), 1).ideal()).is_ci
    return f"p=1,2 CI; p=3: {len(pieces)} pieces contained, {len(routes)} gl2 routes exact, top route equal"


def lemma_residues():
    total = 0
    for p in (3, 4):
        for case in lemma_cases(p):
            idx = {k: v for k, v in case.items() if k != "case"}
            assert check_lemma_membership(p, case["case"], **idx), (p, case)
            total += 1
    return f"{total} index combinations"


def kw_fiber_equals_nilpotent():
    rnd = kw_campaign(10_000, seed=0)
    st = kw_campaign(10_000, seed=0, structured=True)
    assert rnd.disagreements == 0 and st.disagreements == 0
    return f"20000 points, {rnd.in_fiber + st.in_fiber} in the fiber, 0 disagreements"


def gamma_level_one():
    for n in (2, 3):
        assert ideal_equal(Ideal(gt_generators(YangianParams(n, 1))), Ideal(gamma_generators(n))), n
    return "n = 2, 3"


CRITERIA = [
    (1, "determinant vs Young diagrams", young_matches_determinant, 10),
    (2, "closed forms and rewriting witnesses", closed_forms_and_witnesses, 30),
    (3, "Y1(gl3) decomposition", y1_gl3_decomposition, 120),
    (4, "Y_p(gl2) complete intersection", gl2_complete_intersection, 300),
    (5, "Y2(gl3) containment and sampling", y2_gl3_decomposition, None),
    (6, "V_n complete intersection", sigma_complete_intersection, 120),
    (7, "weak version instances", weak_version_instances, 600),
    (8, "recursion lemma residues", lemma_residues, 60),
    (9, "KW fiber vs strong nilpotency", kw_fiber_equals_nilpotent, 60),
    (10, "level one equals power traces", gamma_level_one, 120),
]


@pytest.mark.parametrize("number,title,check,limit", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, limit, capsys):
    start = time.perf_counter()
    detail, error = "", None
    try:
        detail = check()
    except Exception as exc:  # reported below, then re-raised by the assertion
        error = exc
    elapsed = time.perf_counter() - start
    over = limit is not None and elapsed > limit
    ok = error is None and not over
    if over:
        detail = f"{detail}; took {elapsed:.1f}s, limit {limit}s"
    elif error is not None:
        detail = f"{type(error).__name__}: {error}"
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number} ({title}) {elapsed:.2f}s: {detail}")
    assert ok, detail
