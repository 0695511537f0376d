"""Generator families for Gelfand-Tsetlin varieties of restricted Yangians.

All polynomials live in the graded (commutative) setting: ``X_ij^(k)`` has
weight ``k`` and ``X(u) = (delta_ij u^p + sum_k X_ij^(k) u^(p-k))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .poly import Polynomial, USeries, VarTable, YangianVarTable


@dataclass(frozen=True)
class YangianParams:
    """Matrix size ``n`` and level ``p``."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise ValueError(f"n and p must be positive, got n={self.n}, p={self.p}")

    def table(self) -> YangianVarTable:
        return YangianVarTable.create(self.n, self.p)


@dataclass(frozen=True)
class YoungDiagram:
    """Weakly decreasing positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(a < b for a, b in zip(self.parts, self.parts[1:])) or self.parts[-1] <= 0:
            raise ValueError(f"not a Young diagram: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def rearrangements(self):
        """Distinct orderings of the parts (each composition once)."""
        return sorted(set(itertools.permutations(self.parts)), reverse=True)


def young_diagrams(length: int, total: int, max_part: int) -> list[YoungDiagram]:
    """Diagrams with exactly ``length`` rows, ``total`` boxes and rows of at most ``max_part``."""
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) == length:
            if remaining == 0:
                out.append(YoungDiagram(tuple(prefix)))
            return
        slots = length - len(prefix)
        for part in range(min(cap, remaining - (slots - 1)), 0, -1):
            if part * slots < remaining:
                break
            rec(prefix + [part], remaining - part, part)

    if length >= 1 and total >= length:
        rec([], total, max_part)
    return out


def perm_sign(perm) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def _as_params(params, p=None) -> YangianParams:
    if isinstance(params, YangianParams):
        return params
    return YangianParams(params, p)


def _resolve_table(params: YangianParams, table: YangianVarTable | None) -> YangianVarTable:
    if table is None:
        return params.table()
    if table.n < params.n or table.p != params.p:
        raise ValueError("table too small for these parameters")
    return table


def principal_qdet(table: YangianVarTable, m: int) -> list[Polynomial]:
    """Coefficients ``d_{m,1..mp}`` of ``det X(u)`` for the leading ``m x m`` block."""
    p = table.p
    entries = {(i, j): USeries.matrix_entry(table, i, j) for i in range(1, m + 1) for j in range(1, m + 1)}
    total = USeries((table.zero(),))
    for perm in itertools.permutations(range(1, m + 1)):
        term = USeries((table.const(perm_sign(perm)),))
        for row, col in enumerate(perm, start=1):
            term = term * entries[row, col]
        total = total + term
    coeffs = total.coeffs
    # coefficient of u^(mp - i)
    return [coeffs[m * p - i] for i in range(1, m * p + 1)]


def qdet_graded_coeffs(params, table: YangianVarTable | None = None) -> list[Polynomial]:
    """``d_{n,1}, ..., d_{n,np}`` by Leibniz expansion of ``det X(u)``."""
    params = _as_params(params)
    return principal_qdet(_resolve_table(params, table), params.n)


def qdet_coeffs_young(params, table: YangianVarTable | None = None) -> list[Polynomial]:
    """Same coefficients as :func:`qdet_graded_coeffs`, summed over supports and Young diagrams.

    A term of ``d_{n,i}`` picks a set ``A`` of rows carrying positive levels,
    a permutation of ``A`` and a distinct arrangement of a diagram of ``i``
    with ``|A|`` rows no longer than ``p``; rows outside ``A`` contribute 1.
    """
    params = _as_params(params)
    table = _resolve_table(params, table)
    n, p = params.n, params.p
    out = []
    for i in range(1, n * p + 1):
        acc = table.zero()
        for j in range(1, n + 1):
            diagrams = young_diagrams(j, i, p)
            if not diagrams:
                continue
            arrangements = [mu for lam in diagrams for mu in lam.rearrangements()]
            for A in itertools.combinations(range(1, n + 1), j):
                for sigma in itertools.permutations(range(j)):
                    sign = perm_sign(sigma)
                    for mu in arrangements:
                        term = table.const(sign)
                        for k in range(j):
                            term = term * table.x(A[k], A[sigma[k]], mu[k])
                        acc = acc + term
        out.append(acc)
    return out


def gt_generator_table(params, table: YangianVarTable | None = None) -> dict[tuple[int, int], Polynomial]:
    """``{(i, j): d_ij}`` for ``1 <= i <= n``, ``1 <= j <= ip``, all in one universe."""
    params = _as_params(params)
    table = _resolve_table(params, table)
    out = {}
    for i in range(1, params.n + 1):
        for j, d in enumerate(principal_qdet(table, i), start=1):
            out[i, j] = d
    return out


def gt_generators(params, table: YangianVarTable | None = None) -> list[Polynomial]:
    """Flat list of all ``d_ij``, row by row."""
    return list(gt_generator_table(params, table).values())


# -- the n = 3 closed forms -----------------------------------------------------


class _Strict:
    """``X(i, j, k)`` accessor that refuses levels outside ``1..p``.

    Transcribed index ranges should never reach ``X^(0)`` or ``X^(p+1)``; a
    silent zero there would mask a transcription error.
    """

    def __init__(self, table: YangianVarTable):
        self.table = table
        self.p = table.p

    def __call__(self, i, j, k):
        if not 1 <= k <= self.p:
            raise IndexError(f"level {k} outside 1..{self.p} for X{i}{j}")
        return self.table.var(self.table.vid(i, j, k))


def _gl3_table(p: int, table: YangianVarTable | None) -> YangianVarTable:
    if p < 1:
        raise ValueError("p must be positive")
    if table is None:
        return YangianVarTable.create(3, p)
    if table.n != 3 or table.p != p:
        raise ValueError("expected the n = 3 universe at the same level")
    return table


def _cubic6(X, r, s, t):
    """The six signed cubic terms of a 3x3 determinant at levels ``(r, s, t)``."""
    return (
        X(1, 1, r) * X(2, 2, s) * X(3, 3, t)
        - X(1, 1, r) * X(2, 3, s) * X(3, 2, t)
        - X(1, 2, r) * X(2, 1, s) * X(3, 3, t)
        - X(1, 3, r) * X(2, 2, s) * X(3, 1, t)
        + X(1, 2, r) * X(2, 3, s) * X(3, 1, t)
        + X(1, 3, r) * X(2, 1, s) * X(3, 2, t)
    )


def _cubic3(X, r, s, t):
    """The part of :func:`_cubic6` free of ``X11`` and ``X33``."""
    return (
        -X(1, 3, r) * X(2, 2, s) * X(3, 1, t)
        + X(1, 2, r) * X(2, 3, s) * X(3, 1, t)
        + X(1, 3, r) * X(2, 1, s) * X(3, 2, t)
    )


def closed_form_table_gl3(p: int, table: YangianVarTable | None = None) -> dict[tuple[int, int], Polynomial]:
    """Explicit sums for every ``d_ij`` when ``n = 3``, branch by branch."""
    table = _gl3_table(p, table)
    X = _Strict(table)
    Z = table.zero()
    out = {}
    for i in range(1, p + 1):
        out[1, i] = X(1, 1, i)
    out[2, 1] = X(1, 1, 1) + X(2, 2, 1)
    for i in range(2, p + 1):
        out[2, i] = X(1, 1, i) + X(2, 2, i) + sum(
            (X(1, 1, t) * X(2, 2, i - t) - X(1, 2, t) * X(2, 1, i - t) for t in range(1, i)), Z
        )
    for i in range(1, p + 1):
        out[2, p + i] = sum(
            (X(1, 1, t) * X(2, 2, p + i - t) - X(1, 2, t) * X(2, 1, p + i - t) for t in range(i, p + 1)), Z
        )
    out[3, 1] = X(1, 1, 1) + X(2, 2, 1) + X(3, 3, 1)
    if p >= 2:
        out[3, 2] = (
            X(1, 1, 2) + X(2, 2, 2) + X(3, 3, 2)
            + X(1, 1, 1) * X(2, 2, 1) + X(1, 1, 1) * X(3, 3, 1) + X(2, 2, 1) * X(3, 3, 1)
            - X(2, 3, 1) * X(3, 2, 1) - X(1, 2, 1) * X(2, 1, 1) - X(1, 3, 1) * X(3, 1, 1)
        )
    for i in range(3, p + 1):
        f = X(3, 3, i) + X(2, 2, i) + X(1, 1, i)
        for s in range(1, i):
            f += X(2, 2, s) * X(3, 3, i - s) - X(2, 3, s) * X(3, 2, i - s)
            f += (X(1, 1, s) * X(3, 3, i - s) - X(1, 3, s) * X(3, 1, i - s)
                  + X(1, 1, s) * X(2, 2, i - s) - X(1, 2, s) * X(2, 1, i - s))
        for r in range(1, i - 1):
            for s in range(1, i - r):
                f += _cubic6(X, r, s, i - r - s)
        out[3, i] = f
    f = Z
    for s in range(1, p + 1):
        t = p + 1 - s
        f += (X(2, 2, s) * X(3, 3, t) - X(2, 3, s) * X(3, 2, t)
              + X(1, 1, s) * X(3, 3, t) - X(1, 3, s) * X(3, 1, t))
        f += X(1, 1, s) * X(2, 2, t) - X(1, 2, s) * X(2, 1, t)
    for r in range(1, p):
        for s in range(1, p - r + 1):
            f += _cubic6(X, r, s, p + 1 - r - s)
    out[3, p + 1] = f
    for i in range(2, p + 1):
        f = Z
        for s in range(i, p + 1):
            t = p + i - s
            f += X(2, 2, s) * X(3, 3, t) - X(2, 3, s) * X(3, 2, t) + X(1, 1, s) * X(3, 3, t)
            f += -X(1, 3, s) * X(3, 1, t) + X(1, 1, s) * X(2, 2, t) - X(1, 2, s) * X(2, 1, t)
        for r in range(1, i):
            for s in range(i - r, p + 1):
                f += _cubic6(X, r, s, p + i - r - s)
        for r in range(i, p + 1):
            for s in range(1, p + i - r):
                f += _cubic6(X, r, s, p + i - r - s)
        out[3, p + i] = f
    for i in range(1, p + 1):
        f = Z
        for r in range(i, p + 1):
            for s in range(p + i - r, p + 1):
                f += _cubic6(X, r, s, 2 * p + i - r - s)
        out[3, 2 * p + i] = f
    return dict(sorted(out.items()))


def closed_form_d_gl3(p: int, table: YangianVarTable | None = None) -> list[Polynomial]:
    return list(closed_form_table_gl3(p, table).values())


def simplified_table_gl3(p: int, table: YangianVarTable | None = None) -> dict[tuple[int, int], Polynomial]:
    """The simplified system ``{(i, j): p_ij}`` for ``n = 3``.

    Row-3 generators carry no ``X22^(1)`` terms: those are multiples of
    ``p_21 = X22^(1)`` and are absorbed into the rewriting identities.
    """
    table = _gl3_table(p, table)
    X = _Strict(table)
    Z = table.zero()
    out = {}
    for i in range(1, p + 1):
        out[1, i] = X(1, 1, i)
    out[2, 1] = X(2, 2, 1)
    for i in range(2, p + 1):
        out[2, i] = X(2, 2, i) - sum((X(1, 2, t) * X(2, 1, i - t) for t in range(1, i)), Z)
    for i in range(1, p + 1):
        out[2, p + i] = sum((X(1, 2, t) * X(2, 1, p + i - t) for t in range(i, p + 1)), Z)
    row3 = {}
    row3[1] = X(3, 3, 1)
    if p >= 2:
        row3[2] = X(3, 3, 2) - X(2, 3, 1) * X(3, 2, 1) - X(1, 3, 1) * X(3, 1, 1)
    for i in range(3, p + 1):
        f = X(3, 3, i)
        for r in range(1, i - 1):
            for s in range(2, i - r):
                f -= X(1, 3, r) * X(2, 2, s) * X(3, 1, i - r - s)
        for s in range(1, i):
            f -= X(1, 3, s) * X(3, 1, i - s) + X(2, 3, s) * X(3, 2, i - s)
        for r in range(1, i - 1):
            for s in range(1, i - r):
                t = i - r - s
                f += X(1, 2, r) * X(2, 3, s) * X(3, 1, t) + X(1, 3, r) * X(2, 1, s) * X(3, 2, t)
        row3[i] = f
    f = Z
    for r in range(1, p):
        for s in range(1, p - r + 1):
            t = p + 1 - r - s
            f += X(1, 2, r) * X(2, 3, s) * X(3, 1, t) + X(1, 3, r) * X(2, 1, s) * X(3, 2, t)
    for s in range(1, p + 1):
        f -= X(1, 3, s) * X(3, 1, p + 1 - s) + X(2, 3, s) * X(3, 2, p + 1 - s)
    for r in range(1, p):
        for s in range(2, p - r + 1):
            f -= X(1, 3, r) * X(2, 2, s) * X(3, 1, p + 1 - r - s)
    row3[p + 1] = f
    for i in range(2, p + 1):
        f = Z
        for s in range(i, p + 1):
            f -= X(2, 3, s) * X(3, 2, p + i - s) + X(1, 3, s) * X(3, 1, p + i - s)
        for r in range(1, i):
            for s in range(i - r, p + 1):
                f += _cubic3(X, r, s, p + i - r - s)
        for r in range(i, p + 1):
            for s in range(1, p + i - r):
                f += _cubic3(X, r, s, p + i - r - s)
        row3[p + i] = f
    for i in range(1, p + 1):
        f = Z
        for r in range(i, p + 1):
            for s in range(p + i - r, p + 1):
                f += _cubic3(X, r, s, 2 * p + i - r - s)
        row3[2 * p + i] = f
    x22_1 = [table.vid(2, 2, 1)]
    for j, f in row3.items():
        out[3, j] = f.substitute_zero(x22_1)
    return dict(sorted(out.items()))


def simplified_generators_gl3(p: int, table: YangianVarTable | None = None) -> list[Polynomial]:
    return list(simplified_table_gl3(p, table).values())


@dataclass(frozen=True)
class Witness:
    """A claimed polynomial identity ``lhs == rhs``."""

    label: str
    lhs: Polynomial
    rhs: Polynomial

    def holds(self) -> bool:
        return self.lhs == self.rhs

    def difference(self) -> Polynomial:
        return self.lhs - self.rhs

    def __iter__(self):
        return iter((self.lhs, self.rhs))


def rewriting_witnesses(p: int, table: YangianVarTable | None = None) -> list[Witness]:
    """Each ``d_ij`` (n = 3) written as a combination of the ``p_ij``.

    The right-hand sides are built from the simplified generators and
    variables only; equality with the determinant coefficients is what
    shows both families cut out the same ideal.
    """
    table = _gl3_table(p, table)
    X = _Strict(table)
    Z = table.zero()
    d = gt_generator_table(YangianParams(3, p), table)
    P = simplified_table_gl3(p, table)
    out = []

    def add(i, j, rhs):
        out.append(Witness(f"d_{i},{j}", d[i, j], rhs))

    def x13x31(total, rs):
        # sum of X13^(r) X31^(total - r) over r in rs
        return sum((X(1, 3, r) * X(3, 1, total - r) for r in rs), Z)

    for i in range(1, p + 1):
        add(1, i, P[1, i])
    add(2, 1, P[1, 1] + P[2, 1])
    for i in range(2, p + 1):
        add(2, i, P[1, i] + sum((P[1, t] * X(2, 2, i - t) for t in range(1, i)), Z) + P[2, i])
    for i in range(1, p + 1):
        add(2, p + i, sum((P[1, t] * X(2, 2, p + i - t) for t in range(i, p + 1)), Z) - P[2, p + i])
    add(3, 1, P[1, 1] + P[2, 1] + P[3, 1])
    if p >= 2:
        add(3, 2, P[1, 2] + P[2, 2] + P[1, 1] * X(2, 2, 1) + P[1, 1] * X(3, 3, 1)
            + P[2, 1] * X(3, 3, 1) + P[3, 2])
    for i in range(3, p + 1):
        rhs = P[1, i]
        for s in range(1, i):
            rhs += P[1, s] * (X(3, 3, i - s) + X(2, 2, i - s))
        for r in range(1, i - 1):
            for s in range(1, i - r):
                rhs += P[1, r] * (X(2, 2, s) * X(3, 3, i - r - s) - X(2, 3, s) * X(3, 2, i - r - s))
        rhs += P[2, i] + P[2, 1] * X(3, 3, i - 1)
        rhs += sum((P[2, i - r] * X(3, 3, r) for r in range(1, i - 1)), Z)
        rhs -= P[2, 1] * x13x31(i - 1, range(1, i - 1))
        add(3, i, rhs + P[3, i])
    rhs = Z
    for s in range(1, p + 1):
        rhs += P[1, s] * (X(3, 3, p + 1 - s) + X(2, 2, p + 1 - s))
    for r in range(1, p):
        for s in range(1, p - r + 1):
            rhs += P[1, r] * (X(2, 2, s) * X(3, 3, p + 1 - r - s) - X(2, 3, s) * X(3, 2, p + 1 - r - s))
    rhs += P[2, 1] * X(3, 3, p) + sum((X(3, 3, r) * P[2, p + 1 - r] for r in range(1, p)), Z)
    rhs -= P[2, 1] * x13x31(p, range(1, p))
    add(3, p + 1, rhs - P[2, p + 1] + P[3, p + 1])
    for i in range(2, p + 1):
        rhs = Z
        for s in range(i, p + 1):
            rhs += P[1, s] * (X(2, 2, p + i - s) + X(3, 3, p + i - s))
        for r in range(1, i):
            for s in range(i - r, p + 1):
                rhs += P[1, r] * (X(2, 2, s) * X(3, 3, p + i - r - s) - X(2, 3, s) * X(3, 2, p + i - r - s))
        for r in range(i, p + 1):
            for s in range(1, p + i - r):
                rhs += P[1, r] * (X(2, 2, s) * X(3, 3, p + i - r - s) - X(2, 3, s) * X(3, 2, p + i - r - s))
        rhs -= P[2, p + i]
        rhs += sum((X(3, 3, r) * P[2, p + i - r] for r in range(i, p + 1)), Z)
        rhs -= sum((X(3, 3, r) * P[2, p + i - r] for r in range(1, i)), Z)
        rhs -= P[2, 1] * x13x31(p + i - 1, range(i - 1, p + 1))
        add(3, p + i, rhs + P[3, p + i])
    for i in range(1, p + 1):
        rhs = Z
        for r in range(i, p + 1):
            for s in range(p + i - r, p + 1):
                t = 2 * p + i - r - s
                rhs += P[1, r] * (X(2, 2, s) * X(3, 3, t) - X(2, 3, s) * X(3, 2, t))
        rhs -= sum((X(3, 3, r) * P[2, 2 * p + i - r] for r in range(i, p + 1)), Z)
        if i == 1:
            rhs -= P[2, 1] * X(1, 3, p) * X(3, 1, p)
        add(3, 2 * p + i, rhs + P[3, 2 * p + i])
    return out


# -- the gl_n families --------------------------------------------------------


def sigma_universe(n: int) -> VarTable:
    """Variables of the weak-version generators: ``X_{n,t}``, ``X_{t,n}`` and ``X_{r,s}`` with ``n > r > s``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    names = [f"X{n}{t}_1" for t in range(1, n)] + [f"X{t}{n}_1" for t in range(1, n)]
    names += [f"X{r}{s}_1" for r in range(n - 1, 1, -1) for s in range(r - 1, 0, -1)]
    return VarTable(tuple(names))


def sigma_generators(n: int, universe: VarTable | None = None) -> list[Polynomial]:
    """``sigma_{n,j}`` for ``j = 2..n``: sums of ``X_{n,t1} X_{t1,t2} ... X_{t_{j-1},n}`` over decreasing chains."""
    universe = universe or sigma_universe(n)

    def x(a, b):
        return universe.var(f"X{a}{b}_1")

    out = []
    for j in range(2, n + 1):
        f = universe.zero()
        for chain in itertools.combinations(range(n - 1, 0, -1), j - 1):
            path = (n,) + chain + (n,)
            term = universe.one()
            for a, b in zip(path, path[1:]):
                term = term * x(a, b)
            f = f + term
        out.append(f)
    return out


def gamma_generators(n: int, table: YangianVarTable | None = None) -> list[Polynomial]:
    """Power traces ``gamma_ij = tr(E_i^j)`` of the leading ``i x i`` blocks, ``1 <= j <= i <= n``."""
    if n < 1:
        raise ValueError("n must be positive")
    table = table or YangianVarTable.create(n, 1)
    out = []
    for i in range(1, n + 1):
        E = [[table.x(a, b, 1) for b in range(1, i + 1)] for a in range(1, i + 1)]
        power = E
        for j in range(1, i + 1):
            if j > 1:
                power = _matmul(power, E, table)
            out.append(sum((power[a][a] for a in range(i)), table.zero()))
    return out


def _matmul(A, B, table):
    size = len(A)
    return [
        [sum((A[r][k] * B[k][c] for k in range(size)), table.zero()) for c in range(size)]
        for r in range(size)
    ]


FAMILIES = ("d", "d-young", "p-gl3", "d-closed-gl3", "sigma", "gamma")


def family(name: str, n: int | None = None, p: int | None = None) -> list[Polynomial]:
    """Generators of a named family; ``n`` or ``p`` is ignored where the family fixes it."""
    if name == "d":
        return gt_generators(YangianParams(n, p))
    if name == "d-young":
        params = YangianParams(n, p)
        table = params.table()
        return [f for m in range(1, n + 1) for f in qdet_coeffs_young(YangianParams(m, p), table)]
    if name == "p-gl3":
        return simplified_generators_gl3(p)
    if name == "d-closed-gl3":
        return closed_form_d_gl3(p)
    if name == "sigma":
        return sigma_generators(n)
    if name == "gamma":
        return gamma_generators(n)
    raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
