"""Kostant-Wallach map, strongly nilpotent matrices and points on catalogued components."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .poly import Polynomial, VarTable, YangianVarTable

_NAME = re.compile(r"X(\d)(\d)_(\d+)$")
DEFAULT_BOUND = 10


@dataclass(frozen=True)
class MatrixPoint:
    """Exact rational entries ``a_ij^(t)``; ``levels[t-1][i-1][j-1]``."""

    n: int
    p: int
    levels: tuple

    def __post_init__(self):
        if len(self.levels) != self.p or any(
            len(M) != self.n or any(len(row) != self.n for row in M) for M in self.levels
        ):
            raise ValueError(f"need {self.p} levels of {self.n}x{self.n} entries")
        object.__setattr__(
            self, "levels", tuple(tuple(tuple(Fraction(x) for x in row) for row in M) for M in self.levels)
        )

    @classmethod
    def from_rows(cls, rows) -> "MatrixPoint":
        return cls(len(rows), 1, (tuple(map(tuple, rows)),))

    @classmethod
    def zero(cls, n: int, p: int = 1) -> "MatrixPoint":
        return cls(n, p, tuple(((0,) * n,) * n for _ in range(p)))

    @classmethod
    def parse(cls, text: str) -> "MatrixPoint":
        """Rows separated by ``;``, entries by spaces or commas, levels by ``|``."""
        levels = []
        for chunk in text.split("|"):
            rows = [r for r in (row.replace(",", " ").split() for row in chunk.split(";")) if r]
            levels.append(tuple(tuple(Fraction(x) for x in row) for row in rows))
        n = len(levels[0])
        return cls(n, len(levels), tuple(levels))

    def format(self) -> str:
        return " | ".join("; ".join(" ".join(str(x) for x in row) for row in M) for M in self.levels)

    def __str__(self):
        return self.format()

    def entry(self, i: int, j: int, t: int = 1) -> Fraction:
        return self.levels[t - 1][i - 1][j - 1]

    def matrix(self, t: int = 1) -> list[list[Fraction]]:
        return [list(row) for row in self.levels[t - 1]]

    def as_dict(self) -> dict[str, Fraction]:
        return {
            f"X{i + 1}{j + 1}_{t + 1}": x
            for t, M in enumerate(self.levels)
            for i, row in enumerate(M)
            for j, x in enumerate(row)
        }

    def assignment(self, universe: VarTable) -> dict[str, Fraction]:
        """Values for the variables of ``universe``; names outside the matrix are an error."""
        values = self.as_dict()
        missing = [name for name in universe.names if name not in values]
        if missing:
            raise ValueError(f"point has no entry for {missing}")
        return {name: values[name] for name in universe.names}


@dataclass(frozen=True)
class KWValue:
    """``chi[i-1] = (gamma_i1, ..., gamma_ii)``: power traces of the leading ``i x i`` block."""

    chi: tuple

    def is_zero(self) -> bool:
        return not any(x for block in self.chi for x in block)

    def flat(self) -> list[Fraction]:
        return [x for block in self.chi for x in block]


def _require_level_one(X: MatrixPoint):
    if X.p != 1:
        raise ValueError("the Kostant-Wallach map is defined on level-1 points only")


def _mul(A, B):
    n = len(A)
    return [[sum(A[r][k] * B[k][c] for k in range(n)) for c in range(n)] for r in range(n)]


def _block(X: MatrixPoint, i: int):
    return [list(row[:i]) for row in X.levels[0][:i]]


def _power_traces(E, upto: int) -> list[Fraction]:
    out, P = [], E
    for j in range(1, upto + 1):
        if j > 1:
            P = _mul(P, E)
        out.append(sum((P[a][a] for a in range(len(E))), Fraction(0)))
    return out


def kw_map(X: MatrixPoint) -> KWValue:
    _require_level_one(X)
    return KWValue(tuple(tuple(_power_traces(_block(X, i), i)) for i in range(1, X.n + 1)))


def kw_partial(X: MatrixPoint, k: int) -> tuple:
    """The last ``k`` blocks ``(chi_{n-k+1}, ..., chi_n)``."""
    _require_level_one(X)
    if not 1 <= k <= X.n:
        raise ValueError(f"k must lie in 1..{X.n}")
    return tuple(tuple(_power_traces(_block(X, i), i)) for i in range(X.n - k + 1, X.n + 1))


def is_strongly_nilpotent(X: MatrixPoint) -> bool:
    """Every leading block ``E_i`` satisfies ``E_i^i = 0``."""
    _require_level_one(X)
    for i in range(1, X.n + 1):
        E = _block(X, i)
        P = E
        for _ in range(i - 1):
            P = _mul(P, E)
        if any(x for row in P for x in row):
            return False
    return True


def fiber_membership(X: MatrixPoint) -> bool:
    """Whether ``X`` lies in the zero fiber of the Kostant-Wallach map."""
    return kw_map(X).is_zero()


# -- Newton identities ---------------------------------------------------------


def _det(M) -> Fraction:
    M = [list(row) for row in M]
    n, det = len(M), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def elementary_from_minors(E) -> list[Fraction]:
    """``e_k`` = sum of the ``k x k`` principal minors, ``k = 1..size``."""
    n = len(E)
    return [
        sum((_det([[E[r][c] for c in S] for r in S]) for S in combinations(range(n), k)), Fraction(0))
        for k in range(1, n + 1)
    ]


def elementary_from_traces(traces) -> list[Fraction]:
    """Newton's identities: ``k e_k = sum_j (-1)^(j-1) e_(k-j) p_j``."""
    e = [Fraction(1)]
    for k in range(1, len(traces) + 1):
        e.append(sum(((-1) ** (j - 1) * e[k - j] * traces[j - 1] for j in range(1, k + 1)), Fraction(0)) / k)
    return e[1:]


def newton_consistent(X: MatrixPoint) -> bool:
    """Power traces and principal minors give the same characteristic polynomial for every block."""
    _require_level_one(X)
    chi = kw_map(X).chi
    return all(
        elementary_from_traces(chi[i - 1]) == elementary_from_minors(_block(X, i)) for i in range(1, X.n + 1)
    )


# -- sampling ------------------------------------------------------------------


def random_rational(rng: random.Random, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_matrix(n: int, rng: random.Random, bound: int = DEFAULT_BOUND, kind: str = "full") -> MatrixPoint:
    """A random level-1 point; ``kind`` is ``full``, ``strict-lower``, ``strict-upper`` or ``upper``."""
    keep = {
        "full": lambda i, j: True,
        "strict-lower": lambda i, j: i > j,
        "strict-upper": lambda i, j: i < j,
        "upper": lambda i, j: i <= j,
    }[kind]
    rows = [[random_rational(rng, bound) if keep(i, j) else 0 for j in range(n)] for i in range(n)]
    return MatrixPoint.from_rows(rows)


class UnsolvableComponent(ValueError):
    """The built-in solver cannot parametrize this component."""


def _split_linear(f: Polynomial, v: int):
    """``f = a*x_v + b`` with ``a, b`` free of ``x_v``; None if ``x_v`` is not linear in ``f``."""
    a, b = {}, {}
    for m, c in f.terms.items():
        if m[v] > 1:
            return None
        if m[v] == 1:
            a[m[:v] + (0,) + m[v + 1:]] = c
        else:
            b[m] = c
    if not a:
        return None
    return Polynomial._raw(f.universe, a), Polynomial._raw(f.universe, b)


def _plan(relations: list[Polynomial]):
    """Order relations and pick a linear pivot in each that no earlier relation mentions."""

    def search(remaining: tuple, assigned: frozenset):
        if not remaining:
            return []
        for r in remaining:
            f = relations[r]
            for v in sorted(f.variables() - assigned):
                if _split_linear(f, v) is None:
                    continue
                rest = search(tuple(x for x in remaining if x != r), assigned | f.variables())
                if rest is not None:
                    return [(r, v)] + rest
        return None

    return search(tuple(range(len(relations))), frozenset())


@lru_cache(maxsize=256)
def _component_plan(key):
    gens = key
    universe = gens[0].universe
    zeros = sorted({g.as_variable() for g in gens if g.as_variable() is not None})
    relations = []
    for g in gens:
        if g.as_variable() is not None:
            continue
        h = g.substitute_zero(zeros)
        if not h:
            continue
        if h.total_degree() == 0:
            raise UnsolvableComponent("component is empty")
        relations.append(h)
    plan = _plan(relations)
    if plan is None:
        raise UnsolvableComponent("no triangular parametrization found")
    pivots = {v for _, v in plan}
    free = [v for v in range(len(universe)) if v not in pivots and v not in zeros]
    steps = [(v, _split_linear(relations[r], v)) for r, v in plan]
    return zeros, free, steps


def _shape(universe: VarTable) -> tuple[int, int]:
    if isinstance(universe, YangianVarTable):
        return universe.n, universe.p
    n = p = 1
    for name in universe.names:
        m = _NAME.match(name)
        if not m:
            raise UnsolvableComponent(f"variable {name} is not a matrix entry")
        n = max(n, int(m[1]), int(m[2]))
        p = max(p, int(m[3]))
    return n, p


def sample_component_point(comp, seed: int, bound: int = DEFAULT_BOUND, attempts: int = 200) -> MatrixPoint:
    """A rational point of ``V(comp)``, deterministic in ``seed``; seed 0 gives the origin.

    Variable generators are set to 0, the remaining free coordinates are
    drawn at random and each nonlinear relation is solved for a pivot
    variable occurring linearly in it. Matrix entries outside the component's
    universe are 0.
    """
    gens = comp.gens if hasattr(comp, "gens") else list(comp)
    universe = gens[0].universe
    n, p = _shape(universe)
    values = {name: Fraction(0) for name in universe.names}
    if seed != 0:
        zeros, free, steps = _component_plan(tuple(gens))
        rng = random.Random(seed)
        for _ in range(attempts):
            vals = [Fraction(0)] * len(universe)
            for v in free:
                vals[v] = random_rational(rng, bound)
            ok = True
            for v, (a, b) in steps:
                coef = a.evaluate(vals)
                if not coef:
                    ok = False
                    break
                vals[v] = -b.evaluate(vals) / coef
            if ok:
                values = dict(zip(universe.names, vals))
                break
        else:
            raise UnsolvableComponent(f"no generic point found in {attempts} attempts")
    levels = [[[Fraction(0)] * n for _ in range(n)] for _ in range(p)]
    for name, x in values.items():
        m = _NAME.match(name)
        levels[int(m[3]) - 1][int(m[1]) - 1][int(m[2]) - 1] = x
    point = MatrixPoint(n, p, tuple(tuple(map(tuple, M)) for M in levels))
    if any(g.evaluate(values) for g in gens):
        raise AssertionError("sampled point is off the component")
    return point


# -- campaigns -----------------------------------------------------------------


@dataclass
class CampaignResult:
    samples: int
    disagreements: int
    in_fiber: int
    examples: list

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def to_report(self) -> dict:
        return {
            "samples": self.samples,
            "disagreements": self.disagreements,
            "in_fiber": self.in_fiber,
            "examples": [str(x) for x in self.examples],
        }


def _compare(points) -> CampaignResult:
    total = bad = hits = 0
    examples = []
    for X in points:
        total += 1
        fib = fiber_membership(X)
        hits += fib
        if fib != is_strongly_nilpotent(X):
            bad += 1
            if len(examples) < 5:
                examples.append(X)
    return CampaignResult(total, bad, hits, examples)


def random_points(count: int, seed: int = 0, n: int | None = None, bound: int = DEFAULT_BOUND):
    """Fully random matrices, sizes cycling through ``1..4`` unless ``n`` is fixed."""
    rng = random.Random(seed)
    for k in range(count):
        yield random_matrix(n or 1 + k % 4, rng, bound)


@lru_cache(maxsize=8)
def _structured_components(n: int):
    from .varieties import coordinate_components, listed_components, upper_variety

    comps = [upper_variety(n)]
    if n == 3:
        comps += listed_components(1)
    elif n <= 4:
        comps += coordinate_components(n)
    return tuple(comps)


def structured_points(count: int, seed: int = 0, n: int | None = None, bound: int = DEFAULT_BOUND):
    """Triangular matrices, component points and small perturbations of them."""
    rng = random.Random(seed)
    kinds = ("strict-lower", "strict-upper", "upper", "component", "perturbed")
    for k in range(count):
        size = n or 1 + k % 4
        kind = kinds[k % len(kinds)]
        if kind in ("strict-lower", "strict-upper", "upper"):
            yield random_matrix(size, rng, bound, kind)
            continue
        comps = _structured_components(size)
        comp = comps[rng.randrange(len(comps))]
        X = sample_component_point(comp, rng.randrange(1, 2**31), bound)
        if kind == "perturbed":
            rows = X.matrix()
            i, j = rng.randrange(size), rng.randrange(size)
            rows[i][j] += random_rational(rng, bound)
            X = MatrixPoint.from_rows(rows)
        yield X


def kw_campaign(count: int, seed: int = 0, n: int | None = None, structured: bool = False,
                bound: int = DEFAULT_BOUND) -> CampaignResult:
    """Compare fiber membership with strong nilpotency on seeded samples."""
    source = structured_points if structured else random_points
    return _compare(source(count, seed, n, bound))
