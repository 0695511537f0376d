"""Named subvarieties, complete-intersection checks and decomposition verification."""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .groebner import (
    DEFAULT_BUDGET,
    SCHEMA_VERSION,
    Budget,
    BudgetExceeded,
    DimensionResult,
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_intersection,
    ideal_equal,
    krull_dimension,
    normal_form,
    radical_membership,
)
from .poly import Inhomogeneous, Polynomial, VarTable, YangianVarTable
from .yangian import (
    YangianParams,
    gamma_generators,
    gt_generator_table,
    sigma_generators,
    sigma_universe,
    simplified_table_gl3,
)


@dataclass
class ComponentSpec:
    """A named candidate component: generators and, when known, its dimension."""

    name: str
    gens: list[Polynomial]
    expected_dim: int | None = None

    def __post_init__(self):
        if not self.gens:
            raise ValueError(f"component {self.name} has no generators")

    @property
    def universe(self) -> VarTable:
        return self.gens[0].universe

    def ideal(self) -> Ideal:
        return Ideal(self.gens, self.universe)


# -- GT ideals -----------------------------------------------------------------


def _params(params, p=None) -> YangianParams:
    return params if isinstance(params, YangianParams) else YangianParams(params, p)


def simplified_table(params, table: YangianVarTable | None = None) -> dict[tuple[int, int], Polynomial]:
    """``p_ij`` for rows 1-3 and ``d_ij`` for rows ``i >= 4`` in the size-``n`` universe (``n >= 3``)."""
    params = _params(params)
    if params.n < 3:
        raise ValueError("the simplified system needs n >= 3")
    table = table or params.table()
    small = simplified_table_gl3(params.p)
    out = {key: f.lift(table) for key, f in small.items()}
    if params.n > 3:
        for key, f in gt_generator_table(params, table).items():
            if key[0] >= 4:
                out[key] = f
    return out


def build_gts_ideal(params, simplified: bool = False) -> Ideal:
    """The GT ideal for ``Y_p(gl_n)`` in its ``n^2 p`` variables."""
    params = _params(params)
    table = params.table()
    if not simplified or params.n < 3:
        return Ideal(list(gt_generator_table(params, table).values()), table)
    if params.n > 3:
        raise ValueError("the simplified system is only available for n = 3 (n < 3 uses the d_ij)")
    return Ideal(list(simplified_table(params, table).values()), table)


# -- the catalogue -------------------------------------------------------------


def _levels(table, i, j, ks):
    return [table.x(i, j, k) for k in ks]


def _weak_base(params: YangianParams, table, row3_max: int):
    """``W`` together with ``p_3j`` for ``j <= row3_max`` and rows ``i >= 4``."""
    P = simplified_table(params, table)
    p = params.p
    rng = range(1, p + 1)
    gens = _levels(table, 1, 1, rng) + _levels(table, 1, 2, rng) + _levels(table, 2, 2, rng)
    gens += [P[3, j] for j in range(1, row3_max + 1)]
    gens += [f for (i, j), f in P.items() if i >= 4]
    return gens


def _check_range(name, s, lo, hi):
    if not lo <= s <= hi:
        raise ValueError(f"{name} needs {lo} <= s <= {hi}, got s={s}")


def gts_piece(params, s: int) -> ComponentSpec:
    """``GTs_s``: rows 1-2 up to level ``p`` plus the ``X12``/``X21`` tails, plus all of rows ``>= 3``."""
    params = _params(params)
    p = params.p
    _check_range("GTs_s", s, 1, p + 1)
    table = params.table()
    P = simplified_table(params, table)
    gens = [P[i, j] for i in (1, 2) for j in range(1, p + 1)]
    if s <= p:
        gens += _levels(table, 1, 2, range(s, p + 1))
    if s >= 2:
        gens += _levels(table, 2, 1, range(p - s + 2, p + 1))
    gens += [f for (i, j), f in P.items() if i >= 3]
    # GTs_1 is equidimensional of dimension 3p; for p <= 2 every piece has 6p
    # generators inside the 3p-dimensional GT variety, which pins its dimension.
    expected = 3 * p if params.n == 3 and (s == 1 or p <= 2) else None
    return ComponentSpec(f"GTs_{s}", gens, expected)


def weak_top(params) -> ComponentSpec:
    """``W^p``: ``W``, ``p_3j`` for ``j <= 3p-3`` and the three top-level variables ``X32, X21, X13``."""
    params = _params(params)
    p = params.p
    table = params.table()
    gens = _weak_base(params, table, 3 * p - 3)
    gens += [table.x(3, 2, p), table.x(2, 1, p), table.x(1, 3, p)]
    return ComponentSpec("W^p", gens, 3 * p if params.n == 3 else None)


_WEAK_TAILS = {
    # family: (variable killed from level s up, variable killed from level p-s+2 up, valid s range)
    1: ((1, 3), (2, 1), 1),
    2: ((2, 1), (3, 2), 2),
    3: ((1, 3), (3, 2), 2),
}


def weak_piece(params, family: int, s: int) -> ComponentSpec:
    """``W_{family,s}``: ``W``, ``p_3j`` for ``j <= 2p`` and two variable tails."""
    params = _params(params)
    p = params.p
    if family not in _WEAK_TAILS:
        raise ValueError(f"unknown weak family {family}")
    head, tail, lo = _WEAK_TAILS[family]
    hi = p if family == 3 else p + 1
    _check_range(f"W_{family}s", s, lo, hi)
    table = params.table()
    gens = _weak_base(params, table, 2 * p)
    if s <= p:
        gens += _levels(table, *head, range(s, p + 1))
    if s >= 2:
        gens += _levels(table, *tail, range(p - s + 2, p + 1))
    return ComponentSpec(f"W_{family},{s}", gens, 3 * p if params.n == 3 else None)


def sigma_variety(n: int) -> ComponentSpec:
    return ComponentSpec(f"V_{n}", sigma_generators(n), n * (n - 1) // 2)


def upper_variety(n: int) -> ComponentSpec:
    """``V_<=``: all ``X_ij`` with ``i <= j`` vanish (level-1 universe)."""
    table = YangianVarTable.create(n, 1)
    gens = [table.x(i, j, 1) for i in range(1, n + 1) for j in range(i, n + 1)]
    return ComponentSpec("V_<=", gens, n * (n - 1) // 2)


Y1_GL3_COMPONENTS = [
    "X11_1, X22_1, X12_1, X33_1, X23_1, X13_1",
    "X11_1, X22_1, X12_1, X33_1, X32_1, X13_1",
    "X11_1, X22_1, X12_1, X33_1, X13_1*X31_1 + X23_1*X32_1, X21_1",
    "X11_1, X22_1, X12_1, X33_1, X31_1, X32_1",
    "X11_1, X22_1, X21_1, X33_1, X13_1, X23_1",
    "X11_1, X22_1, X21_1, X33_1, X31_1, X23_1",
    "X11_1, X22_1, X21_1, X33_1, X32_1, X31_1",
]

_Y2_HEAD_12 = "X11_1, X11_2, X22_1, X22_2, X12_1, X12_2, X33_1"
_Y2_HEAD_21 = "X11_1, X11_2, X22_1, X22_2, X21_1, X21_2, X33_1"
_Y2_HEAD_MIXED = "X11_1, X11_2, X22_1, X22_2 - X12_1*X21_1, X21_2, X12_2, X33_1"
_Y2_HEAD_LOW = "X11_1, X11_2, X22_1, X21_1, X21_2, X12_2, X33_1"
_Q = "X33_2 - X23_1*X32_1 - X13_1*X31_1"

Y2_GL3_COMPONENTS = [
    f"{_Y2_HEAD_12}, X33_2, X23_1, X23_2, X13_1, X13_2",
    f"{_Y2_HEAD_12}, X33_2 - X23_1*X32_1, X32_2, X23_2, X13_1, X13_2",
    f"{_Y2_HEAD_12}, X33_2, X32_1, X32_2, X13_1, X13_2",
    f"{_Y2_HEAD_12}, {_Q}, -X23_2*X32_1 + X13_1*X21_1*X32_1 - X13_1*X31_2, X32_2, X21_2, X13_2",
    f"{_Y2_HEAD_12}, {_Q}, -X23_1*X32_2 - X13_1*X31_2, -X23_2 + X13_1*X21_1, X21_2, X13_2",
    f"{_Y2_HEAD_12}, X33_2 - X13_1*X31_1, X31_2, X32_1, X32_2, X13_2",
    f"{_Y2_HEAD_12}, {_Q}, X23_1*X32_2 + X23_2*X32_1 + X13_1*X31_2 + X13_2*X31_1, "
    "X23_2*X32_2 + X13_2*X31_2, X21_1, X21_2",
    f"{_Y2_HEAD_12}, {_Q}, X23_2*X32_1 + X13_2*X31_1, X21_1*X32_1 - X31_2, X32_2, X21_2",
    f"{_Y2_HEAD_12}, X33_2, X31_1, X31_2, X32_1, X32_2",
    f"{_Y2_HEAD_MIXED}, X33_2 - X13_1*X31_1, X23_1, X23_2 - X13_1*X21_1, X31_2, X13_2",
    f"{_Y2_HEAD_MIXED}, {_Q}, X32_2 - X12_1*X31_1, X23_2 - X13_1*X21_1, X31_2, X13_2",
    f"{_Y2_HEAD_MIXED}, X33_2 - X13_1*X31_1, X32_1, X32_2 - X12_1*X31_1, X31_2, X13_2",
    f"{_Y2_HEAD_MIXED}, X33_2, X13_1, X23_1, X23_2, X13_2",
    f"{_Y2_HEAD_LOW}, {_Q}, X23_1*X32_2 - X12_1*X23_1*X31_1 + X13_2*X31_1, X31_2, X23_2, X22_2",
    f"{_Y2_HEAD_LOW}, {_Q}, X23_1*X32_2 + X13_1*X31_2, X12_1*X23_1 - X13_2, X23_2, X22_2",
    f"{_Y2_HEAD_LOW}, {_Q}, X23_2*X32_1 + X13_2*X31_1, X32_2 - X12_1*X31_1, X31_2, X22_2",
    f"{_Y2_HEAD_MIXED}, X33_2, X31_1, X32_1, X32_2, X31_2",
    f"{_Y2_HEAD_21}, X33_2, X32_1, X32_2, X31_1, X31_2",
    f"{_Y2_HEAD_21}, X33_2 - X32_1*X23_1, X23_2, X32_2, X31_1, X31_2",
    f"{_Y2_HEAD_21}, X33_2, X23_1, X23_2, X31_1, X31_2",
    f"{_Y2_HEAD_21}, X33_2 - X31_1*X13_1, X13_2, X23_1, X23_2, X31_2",
    f"{_Y2_HEAD_21}, X33_2, X13_1, X13_2, X23_1, X23_2",
]


def _parse_list(text: str, table: VarTable) -> list[Polynomial]:
    return [table.parse(part) for part in text.split(",")]


def listed_components(p: int) -> list[ComponentSpec]:
    """The explicit irreducible components of the GT variety for ``Y_p(gl_3)``, ``p = 1, 2``."""
    if p not in (1, 2):
        raise ValueError("explicit components are catalogued for p = 1 and p = 2 only")
    table = YangianVarTable.create(3, p)
    rows = Y1_GL3_COMPONENTS if p == 1 else Y2_GL3_COMPONENTS
    return [ComponentSpec(f"C_{k}", _parse_list(text, table), 3 * p) for k, text in enumerate(rows, start=1)]


_NAME_PATTERNS = [
    (re.compile(r"GTs_(\d+)$"), lambda m, pr: gts_piece(pr, int(m[1]))),
    (re.compile(r"W\^p$"), lambda m, pr: weak_top(pr)),
    (re.compile(r"W_([123]),?(\d+)$"), lambda m, pr: weak_piece(pr, int(m[1]), int(m[2]))),
    (re.compile(r"V_n$"), lambda m, pr: sigma_variety(pr.n)),
    (re.compile(r"V_(<=|≤)$"), lambda m, pr: upper_variety(pr.n)),
    (re.compile(r"C_(\d+)$"), lambda m, pr: _listed(pr, int(m[1]))),
]


def _listed(params: YangianParams, k: int) -> ComponentSpec:
    if params.n != 3:
        raise ValueError("listed components exist for n = 3 only")
    comps = listed_components(params.p)
    if not 1 <= k <= len(comps):
        raise ValueError(f"C_k needs 1 <= k <= {len(comps)}")
    return comps[k - 1]


def build_subvariety(name: str, params) -> ComponentSpec:
    """Look up a catalogued subvariety by label (``GTs_2``, ``W^p``, ``W_1,3``, ``V_n``, ``V_<=``, ``C_5``)."""
    params = _params(params)
    for pattern, build in _NAME_PATTERNS:
        m = pattern.match(name)
        if m:
            if not name.startswith("V_") and params.n < 3:
                raise ValueError(f"{name} is defined for n >= 3")
            return build(m, params)
    raise ValueError(f"unknown subvariety {name!r}")


def weak_decomposition(params) -> list[ComponentSpec]:
    """Pieces covering ``GTs_1``: ``W_1s`` and ``W_2s``, plus ``W^p`` once ``p >= 3``."""
    params = _params(params)
    p = params.p
    comps = [weak_top(params)] if p >= 3 else []
    comps += [weak_piece(params, 1, s) for s in range(1, p + 2)]
    comps += [weak_piece(params, 2, s) for s in range(2, p + 2)]
    return comps


# -- complete intersections ----------------------------------------------------


@dataclass
class CIResult:
    """Outcome of a complete-intersection check."""

    is_ci: bool
    dimension: DimensionResult
    nvars: int
    ngens: int

    @property
    def expected_dim(self) -> int:
        return self.nvars - self.ngens

    def __bool__(self):
        return self.is_ci

    def to_report(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "complete_intersection": self.is_ci,
            "dim": self.dimension.dim,
            "nvars": self.nvars,
            "ngens": self.ngens,
            "witness": list(self.dimension.witness),
        }


def check_complete_intersection(I, order=None, budget: Budget = DEFAULT_BUDGET) -> CIResult:
    """Whether ``dim V(I) = #vars - #gens`` for weighted-homogeneous generators.

    For a graded ideal in a polynomial ring this equality means the
    generators form a regular sequence, so the variety is equidimensional.
    """
    I = I if isinstance(I, Ideal) else Ideal(I)
    for g in I.gens:
        if not g.is_weighted_homogeneous():
            raise Inhomogeneous(f"generator {g} is not weighted-homogeneous; the certificate does not apply")
    dim = krull_dimension(I, order, budget)
    n, r = len(I.universe), len(I.gens)
    return CIResult(dim.dim == n - r, dim, n, r)


def standalone_variables(I) -> set[int]:
    """Indices of variables that are themselves (scalar multiples of) generators."""
    out = set()
    for g in I.gens:
        v = g.as_variable()
        if v is not None:
            out.add(v)
    return out


def project_and_reduce(I, Z: Iterable) -> Ideal:
    """Drop the coordinates ``Z``: generators ``g^Z`` for ``g`` not a variable of ``Z``, in the smaller ring."""
    I = I if isinstance(I, Ideal) else Ideal(I)
    drop = {I.universe.index_of(v) for v in Z}
    small = I.universe.without(sorted(drop))
    out = []
    for g in I.gens:
        if g.as_variable() in drop:
            continue
        h = g.substitute_zero(drop)
        if h:
            out.append(h.rename({}, small))
    return Ideal(out, small)


@dataclass
class ReductionRoute:
    """A weak piece carried to a smaller GT ideal by adjoining variables, projecting and renaming."""

    name: str
    reduced: Ideal
    target: Ideal
    exact: bool
    equal: bool

    @property
    def ok(self) -> bool:
        return self.equal


def _gl2_simplified(p: int) -> Ideal:
    table = YangianVarTable.create(2, p)
    P = simplified_table_gl3(p)
    gens = [P[i, j].rename({}, table) for i in (1, 2) for j in range(1, i * p + 1)]
    return Ideal(gens, table)


def weak_route(params, family: int, s: int, budget: Budget = DEFAULT_BUDGET) -> ReductionRoute:
    """Carry ``W_{1s}`` or ``W_{2s}`` to the GT ideal of ``Y_p(gl_2)``.

    Adjoin the variables completing ``Z``, substitute, project away five of
    the six variable blocks of ``Z`` and rename the remaining four blocks.
    ``exact`` compares generator lists up to sign; ``equal`` is ideal equality
    with the ``d_ij`` of ``Y_p(gl_2)``.
    """
    params = _params(params)
    p = params.p
    if params.n != 3:
        raise ValueError("the weak routes are for n = 3")
    piece = weak_piece(params, family, s)
    table = params.table()
    if family == 1:
        zero_blocks = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 1), (3, 1)]
        keep_block = (2, 2)
        phi = {(2, 2): (1, 1), (2, 3): (1, 2), (3, 2): (2, 1), (3, 3): (2, 2)}
    elif family == 2:
        zero_blocks = [(1, 1), (1, 2), (2, 2), (2, 1), (2, 3), (3, 2)]
        keep_block = (1, 1)
        phi = {(1, 1): (1, 1), (1, 3): (1, 2), (3, 1): (2, 1), (3, 3): (2, 2)}
    else:
        raise ValueError("routes exist for families 1 and 2")
    Z = [table.vid(i, j, k) for (i, j) in zero_blocks for k in range(1, p + 1)]
    P = simplified_table(params, table)
    row3 = [P[3, j].substitute_zero(Z) for j in range(1, 2 * p + 1)]
    # flip the sign of the top half so the image is literally the gl_2 system
    row3 = [g if g.weighted_degree() <= p else -g for g in row3 if g]
    A = [table.x(*keep_block, k) for k in range(1, p + 1)]
    projected = project_and_reduce(Ideal(A + row3, table), [v for v in Z if table.triple(v)[:2] != keep_block])
    gl2 = YangianVarTable.create(2, p)
    mapping = {
        f"X{a}{b}_{k}": f"X{c}{d}_{k}" for (a, b), (c, d) in phi.items() for k in range(1, p + 1)
    }
    renamed = Ideal([g.rename(mapping, gl2) for g in projected.gens], gl2)
    target = _gl2_simplified(p)
    exact = _same_up_to_sign(renamed.gens, target.gens)
    gt = Ideal(list(gt_generator_table(YangianParams(2, p), gl2).values()), gl2)
    equal = ideal_equal(renamed, gt, budget)
    return ReductionRoute(piece.name, renamed, gt, exact, equal)


def top_route(params, budget: Budget = DEFAULT_BUDGET) -> ReductionRoute:
    """Carry ``W^p`` (``p >= 2``) to ``GTs_1`` one level down by killing every level-``p`` variable."""
    params = _params(params)
    p = params.p
    if params.n != 3 or p < 2:
        raise ValueError("the top route needs n = 3 and p >= 2")
    piece = weak_top(params)
    table = params.table()
    top = [table.vid(i, j, p) for i in range(1, 4) for j in range(1, 4)]
    reduced = project_and_reduce(Ideal(piece.gens, table), top)
    lower = YangianVarTable.create(3, p - 1)
    reduced = Ideal([g.rename({}, lower) for g in reduced.gens], lower)
    target = gts_piece(YangianParams(3, p - 1), 1).ideal()
    exact = _same_up_to_sign(reduced.gens, target.gens)
    equal = exact or ideal_equal(reduced, target, budget)
    return ReductionRoute("W^p", reduced, target, exact, equal)


def _same_up_to_sign(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    def canon(fs):
        out = []
        for f in fs:
            if not f:
                continue
            out.append(min(str(f), str(-f)))
        return sorted(out)

    return canon(a) == canon(b)


# -- decomposition verification ------------------------------------------------


@dataclass
class ComponentResult:
    name: str
    contains: bool | None  # None: budget exhausted
    containment: str | None  # "ideal", "radical" or None
    dim: int | None
    expected_dim: int | None
    witness: tuple[str, ...] = ()
    note: str = ""

    @property
    def dim_ok(self) -> bool:
        return self.dim is not None and (self.expected_dim is None or self.dim == self.expected_dim)


@dataclass
class DecompositionReport:
    """Result of checking ``V(I) = union of V(C_k)``."""

    target: str
    mode: str
    components: list[ComponentResult]
    covering_method: str
    covering_status: str  # pass, fail, budget, skipped
    covering_backward: list[bool] = field(default_factory=list)
    expected_dim: int | None = None
    samples: dict | None = None
    notes: list[str] = field(default_factory=list)
    dims_checked: bool = True

    @property
    def containment_forward(self) -> list[bool | None]:
        return [c.contains for c in self.components]

    @property
    def dims(self) -> list[int | None]:
        return [c.dim for c in self.components]

    @property
    def verdict(self) -> str:
        checks = [c.contains for c in self.components]
        if self.dims_checked:
            checks += [c.dim_ok if c.dim is not None else None for c in self.components]
        if self.dims_checked and self.expected_dim is not None:
            checks += [c.dim == self.expected_dim if c.dim is not None else None for c in self.components]
        if self.mode == "full":
            checks.append({"pass": True, "fail": False}.get(self.covering_status))
        if self.samples is not None:
            checks.append(self.samples.get("ok"))
        if any(c is False for c in checks):
            return "fail"
        if any(c is None for c in checks):
            return "budget"
        return "pass"

    def to_report(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "target": self.target,
            "mode": self.mode,
            "verdict": self.verdict,
            "expected_dim": self.expected_dim,
            "components": [
                {
                    "name": c.name,
                    "forward_containment": c.contains,
                    "containment": c.containment,
                    "dim": c.dim,
                    "expected_dim": c.expected_dim,
                    "witness": list(c.witness),
                    "note": c.note,
                }
                for c in self.components
            ],
            "covering": {
                "method": self.covering_method,
                "status": self.covering_status,
                "generators_in_radical": self.covering_backward,
            },
            "samples": self.samples,
            "notes": self.notes,
        }

    def render(self) -> str:
        lines = [f"target {self.target} ({self.mode}): {self.verdict}"]
        for c in self.components:
            flag = {True: "yes", False: "NO", None: "budget"}[c.contains]
            lines.append(
                f"  {c.name:<8} contains GT: {flag:<6} dim {c.dim if c.dim is not None else '?'}"
                + (f" (expected {c.expected_dim})" if c.expected_dim is not None else "")
                + (f"  {c.note}" if c.note else "")
            )
        lines.append(f"  covering ({self.covering_method}): {self.covering_status}")
        if self.samples is not None:
            lines.append(f"  samples: {self.samples['points']} points, ok={self.samples['ok']}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _contains_syntactically(I: Ideal, comp: ComponentSpec) -> bool:
    """Each generator of ``I`` vanishes, or is a multiple of a generator, once comp's variables are zero."""
    zeros = [v for v in (g.as_variable() for g in comp.gens) if v is not None]
    have = {_canon(r) for r in (g.substitute_zero(zeros) for g in comp.gens) if r}
    return all(not r or _canon(r) in have for r in (g.substitute_zero(zeros) for g in I.gens))


def _contains(I: Ideal, comp: ComponentSpec, budget: Budget, G: GroebnerBasis | None = None):
    """Whether every generator of ``I`` vanishes on ``V(comp)``; returns (flag, kind)."""
    if _contains_syntactically(I, comp):
        return True, "ideal"
    G = G or buchberger(comp.ideal(), budget=budget)
    if all(not normal_form(g, G) for g in I.gens):
        return True, "ideal"
    for g in I.gens:
        if normal_form(g, G) and not radical_membership(g, comp.ideal(), budget):
            return False, None
    return True, "radical"


def covering_by_intersection(I: Ideal, comps: Sequence[ComponentSpec], budget: Budget = DEFAULT_BUDGET) -> list[bool]:
    """Radical membership in ``I`` for each generator of the intersection of the components."""
    J = comps[0].ideal()
    for comp in comps[1:]:
        J = ideal_intersection(J, comp.ideal(), budget)
    return [radical_membership(g, I, budget) for g in J.gens]


def covering_by_splitting(I: Ideal, comps: Sequence[ComponentSpec], budget: Budget = DEFAULT_BUDGET,
                          max_nodes: int = 20000) -> bool:
    """Exact case split showing ``V(I)`` lies in the union of the components.

    A generator ``m * h`` with monomial ``m`` splits the variety into
    ``V(I, x)`` for each variable ``x`` of ``m`` and ``V(I, h)``. When no
    generator or basis element has a monomial factor, a basis element that
    factors over the rationals splits into one branch per factor. A branch
    closes when some component's generators all vanish on it (checked
    syntactically, then by ideal membership against the branch basis).
    Returns False only when a branch can neither be split nor closed.
    """
    universe = I.universe
    comp_gens = [[g for g in c.gens] for c in comps]
    nodes = [0]

    def closes(gens, zeros, G=None):
        have = {_canon(g) for g in gens}
        for cg in comp_gens:
            ok = True
            for c in cg:
                r = c.substitute_zero(zeros)
                if r and _canon(r) not in have and (G is None or normal_form(r, G)):
                    ok = False
                    break
            if ok:
                return True
        return False

    def split_target(polys):
        best = None
        for g in polys:
            m = _monomial_factor(g)
            if m is None:
                continue
            key = (len(g), g.total_degree())
            if best is None or key < best[0]:
                best = (key, g, m)
        return best

    def visit(gens, zeros: frozenset) -> bool:
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise BudgetExceeded(f"case split exceeded {max_nodes} branches")
        gens = _normalize(gens, zeros, universe)
        if gens is None:
            return True  # empty branch
        if closes(gens, zeros):
            return True
        pick = split_target(gens)
        G = None
        if pick is None:
            G = buchberger(Ideal(gens + [universe.var(z) for z in zeros], universe), budget=budget)
            if G.is_unit() or closes(gens, zeros, G):
                return True
            pick = split_target(G.basis)
            if pick is None:
                factored = _first_factorable(G.basis)
                if factored is not None:
                    g, factors = factored
                    rest = [f for f in G.basis if f is not g]
                    return all(visit(rest + [f], zeros) for f in factors)
                return any(
                    all(radical_membership(c, Ideal(G.basis, universe), budget) for c in cg) for cg in comp_gens
                )
        _, g, m = pick
        h = _divide_monomial(g, m)
        for v in sorted(i for i, e in enumerate(m) if e):
            if not visit(gens, zeros | {v}):
                return False
        if h.total_degree() == 0:
            return True
        # g = m*h is redundant once h is a generator
        return visit([f for f in gens if f is not g] + [h], zeros)

    return visit(list(I.gens), frozenset())


def _canon(f: Polynomial) -> str:
    # scale so the leading coefficient (in print order) is 1
    terms = f.sorted_terms()
    lead = terms[0][1]
    return str(f * (1 / lead))


def _normalize(gens, zeros, universe):
    out, seen = [], set()
    for g in gens:
        h = g.substitute_zero(zeros)
        if not h:
            continue
        if h.total_degree() == 0:
            return None
        key = _canon(h)
        if key in seen:
            continue
        seen.add(key)
        out.append(h)
    return out


def _monomial_factor(f: Polynomial):
    """Largest monomial dividing every term of ``f``, or None when it is 1 or ``f`` is a single variable."""
    exps = None
    for m in f.terms:
        exps = list(m) if exps is None else [min(a, b) for a, b in zip(exps, m)]
    if exps is None or not any(exps):
        return None
    if len(f.terms) == 1 and sum(exps) == 1:
        return None
    return tuple(exps)


def _first_factorable(polys):
    """First polynomial (fewest terms first) with a nontrivial rational factorization, with its distinct factors."""
    for g in sorted(polys, key=lambda f: (len(f), f.total_degree())):
        if g.total_degree() < 2:
            continue
        factors = factor_polynomial(g)
        if len(factors) > 1 or (factors and factors[0][1] > 1):
            return g, [f for f, _ in factors]
    return None


def factor_polynomial(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Irreducible factors over the rationals with multiplicities, constants dropped (via sympy)."""
    import sympy

    support = sorted(f.variables())
    if not support:
        return []
    syms = sympy.symbols([f.universe.names[i] for i in support])
    expr = sympy.Poly.from_dict(
        {tuple(m[i] for i in support): sympy.Rational(c.numerator, c.denominator) for m, c in f.terms.items()},
        *syms,
        domain="QQ",
    )
    _, factors = expr.factor_list()
    n = len(f.universe)
    out = []
    for fac, mult in factors:
        terms = {}
        for mono, c in fac.terms():
            full = [0] * n
            for i, e in zip(support, mono):
                full[i] = e
            terms[tuple(full)] = Fraction(int(c.p), int(c.q))
        out.append((Polynomial._raw(f.universe, terms), mult))
    return out


def _divide_monomial(f: Polynomial, m) -> Polynomial:
    return Polynomial._raw(f.universe, {tuple(a - b for a, b in zip(mono, m)): c for mono, c in f.terms.items()})


def verify_decomposition(
    I,
    comps: Sequence[ComponentSpec],
    mode: str = "full",
    *,
    covering: str = "intersection",
    expected_dim: int | None = None,
    budget: Budget = DEFAULT_BUDGET,
    samples_per_component: int = 0,
    seed: int = 0,
    target: str = "",
    compute_dims: bool = True,
) -> DecompositionReport:
    """Check ``V(I)`` is the union of the ``V(comp)``.

    Forward: each component lies in ``V(I)``. Backward (``mode="full"``):
    ``V(I)`` lies in the union, by intersecting the component ideals or by an
    exact case split. Budget exhaustion is recorded per check. With
    ``compute_dims=False`` dimensions are left to the caller (for instance a
    projection route) and do not enter the verdict.
    """
    if mode not in ("full", "containment-only"):
        raise ValueError(f"unknown mode {mode!r}")
    if covering not in ("intersection", "split"):
        raise ValueError(f"unknown covering method {covering!r}")
    I = I if isinstance(I, Ideal) else Ideal(I)
    for comp in comps:
        if comp.universe != I.universe:
            raise ValueError(f"component {comp.name} lives in another universe")
    results = []
    for comp in comps:
        try:
            flag, kind = _contains(I, comp, budget)
        except BudgetExceeded as exc:
            results.append(ComponentResult(comp.name, None, None, None, comp.expected_dim, note=str(exc)))
            continue
        if not compute_dims:
            results.append(ComponentResult(comp.name, flag, kind, None, comp.expected_dim, note="dimension not computed"))
            continue
        try:
            dim = krull_dimension(comp.ideal(), budget=budget)
        except BudgetExceeded as exc:
            results.append(ComponentResult(comp.name, flag, kind, None, comp.expected_dim, note=str(exc)))
            continue
        results.append(ComponentResult(comp.name, flag, kind, dim.dim, comp.expected_dim, dim.witness))
    report = DecompositionReport(target, mode, results, covering, "skipped", expected_dim=expected_dim,
                                  dims_checked=compute_dims)
    if mode == "full":
        try:
            if covering == "intersection":
                flags = covering_by_intersection(I, comps, budget)
                report.covering_backward = flags
                report.covering_status = "pass" if all(flags) else "fail"
            else:
                report.covering_status = "pass" if covering_by_splitting(I, comps, budget) else "fail"
        except BudgetExceeded as exc:
            report.covering_status = "budget"
            report.notes.append(f"covering: {exc}")
    if samples_per_component:
        from .kw import sample_component_point

        total, ok = 0, True
        for k, comp in enumerate(comps):
            for t in range(samples_per_component):
                pt = sample_component_point(comp, seed + 1000 * k + t)
                total += 1
                if any(g.evaluate(pt) for g in I.gens):
                    ok = False
        report.samples = {"points": total, "per_component": samples_per_component, "ok": ok}
    return report


# -- lemma residues ------------------------------------------------------------


N1_CASES = ("1a", "1b", "1c", "2a", "2b", "3")


@dataclass
class LemmaCheck:
    case: str
    indices: dict
    polynomial: str
    residue: Polynomial
    expected: Polynomial

    @property
    def ok(self) -> bool:
        return self.residue == self.expected


def _mono(table, *factors):
    out = table.one()
    for i, j, k in factors:
        out = out * table.x(i, j, k)
    return out


def lemma_residue(p: int, case: str, i: int | None = None, j: int | None = None, s: int | None = None) -> LemmaCheck:
    """Substitute ``W`` and the case's vanishing hypotheses into the relevant ``p_3*`` generator.

    ``case`` is one of the N1 cases (``1a`` ... ``3``), ``N2`` or ``top``.
    """
    if p < 1:
        raise ValueError("p must be positive")
    table = YangianVarTable.create(3, p)
    P = simplified_table_gl3(p, table)
    W = [table.vid(a, b, k) for (a, b) in ((1, 1), (1, 2), (2, 2)) for k in range(1, p + 1)]

    def tail(a, b, start):
        return [table.vid(a, b, k) for k in range(max(start, 1), p + 1)]

    if case == "top":
        poly, zeros = (3, 3 * p), []
        expected = _mono(table, (1, 3, p), (2, 1, p), (3, 2, p))
        idx = {}
    elif case == "N2":
        if s is None or j is None or not (2 <= s <= p - 1 and 0 <= j <= p - s):
            raise ValueError("N2 needs 2 <= s <= p-1 and 0 <= j <= p-s")
        poly = (3, 2 * p - j)
        zeros = tail(1, 3, s) + tail(3, 2, p - s + 2 - j)
        expected = _mono(table, (1, 3, s - 1), (2, 1, p), (3, 2, p - j - s + 1))
        idx = {"s": s, "j": j}
    elif case in N1_CASES:
        if i is None or not 1 <= i <= p - 2:
            raise ValueError("N1 needs 1 <= i <= p-2")
        needs_j = case in ("1b", "2a", "3")
        if needs_j and (j is None or not 1 <= j <= i):
            raise ValueError(f"case {case} needs 1 <= j <= i")
        poly = (3, 3 * p - i - 1)
        if case == "1a":
            zeros = tail(1, 3, p - i)
            expected = _mono(table, (1, 3, p - i - 1), (2, 1, p), (3, 2, p))
        elif case == "1b":
            zeros = tail(1, 3, p - i + j) + tail(2, 1, p - j + 1)
            expected = _mono(table, (1, 3, p - i + j - 1), (2, 1, p - j), (3, 2, p))
        elif case == "1c":
            zeros = tail(2, 1, p - i)
            expected = _mono(table, (1, 3, p), (2, 1, p - i - 1), (3, 2, p))
        elif case == "2a":
            zeros = tail(2, 1, p - i + j) + tail(3, 2, p - j + 1)
            expected = _mono(table, (1, 3, p), (2, 1, p - i + j - 1), (3, 2, p - j))
        elif case == "2b":
            zeros = tail(3, 2, p - i)
            expected = _mono(table, (1, 3, p), (2, 1, p), (3, 2, p - i - 1))
        else:
            zeros = tail(1, 3, p - i + j) + tail(3, 2, p - j + 1)
            expected = _mono(table, (1, 3, p - i + j - 1), (2, 1, p), (3, 2, p - j))
        idx = {"i": i} | ({"j": j} if needs_j else {})
    else:
        raise ValueError(f"unknown lemma case {case!r}")
    residue = P[poly].substitute_zero(W + zeros)
    return LemmaCheck(case, idx, f"p_3,{poly[1]}", residue, expected)


def lemma_cases(p: int) -> list[dict]:
    """Every legal index combination at level ``p``."""
    out = [{"case": "top"}]
    for i in range(1, p - 1):
        for case in N1_CASES:
            if case in ("1b", "2a", "3"):
                out += [{"case": case, "i": i, "j": j} for j in range(1, i + 1)]
            else:
                out.append({"case": case, "i": i})
    for s in range(2, p):
        out += [{"case": "N2", "s": s, "j": j} for j in range(0, p - s + 1)]
    return out


def check_lemma_membership(p: int, which: str, **indices) -> bool:
    """Whether the residue under the case's hypotheses is the asserted product monomial."""
    return lemma_residue(p, which, **indices).ok


# -- gl_n: coordinate components ----------------------------------------------


def coordinate_components(n: int) -> list[ComponentSpec]:
    """Coordinate subspaces of dimension ``n(n-1)/2`` inside the GT variety for ``gl_n``.

    A set ``S`` of ``n(n+1)/2`` variables qualifies when every power trace
    vanishes identically once the variables in ``S`` are set to zero.
    """
    table = YangianVarTable.create(n, 1)
    gammas = gamma_generators(n, table)
    size = n * (n + 1) // 2
    out = []
    for S in itertools.combinations(range(len(table)), size):
        if all(not g.substitute_zero(S) for g in gammas):
            gens = [table.var(v) for v in S]
            name = "V(" + ",".join(table.names[v] for v in S) + ")"
            out.append(ComponentSpec(name, gens, n * (n - 1) // 2))
    return out


def is_coordinate_subspace(comp: ComponentSpec) -> bool:
    return all(g.as_variable() is not None for g in comp.gens)


def sigma_ideal(n: int) -> Ideal:
    return Ideal(sigma_generators(n), sigma_universe(n))
