"""Groebner bases over the rationals and the ideal operations built on them.

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller form of Buchberger's coprime and chain criteria. Everything
is exact; a computation that outgrows its :class:`Budget` raises
:class:`BudgetExceeded` instead of returning a partial answer.
"""

from __future__ import annotations

import heapq
import operator
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Polynomial, UniverseMismatch, VarTable

SCHEMA_VERSION = 1


class BudgetExceeded(RuntimeError):
    """A computation needed more S-pair reductions or terms than its budget allows."""


class ImproperIdeal(ValueError):
    """The ideal contains 1, so its variety is empty."""


@dataclass(frozen=True)
class Budget:
    """Resource caps for one Groebner computation."""

    reductions: int = 10**6
    terms: int = 10**6

    def check_terms(self, count):
        if count > self.terms:
            raise BudgetExceeded(f"intermediate polynomial with {count} terms exceeds budget {self.terms}")


DEFAULT_BUDGET = Budget()

# -- monomial orders -----------------------------------------------------------

ORDER_KINDS = ("lex", "degrevlex", "wdegrevlex", "elim")


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent tuples of a fixed length.

    ``kind`` is one of ``lex``, ``degrevlex``, ``wdegrevlex`` (weighted degree,
    ties broken by degrevlex) or ``elim`` (block order: degree in ``block``
    first, then degrevlex). ``priority`` optionally permutes variables:
    ``priority[0]`` is the largest variable.
    """

    kind: str
    nvars: int
    weights: tuple[int, ...] | None = None
    block: frozenset = frozenset()
    priority: tuple[int, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wdegrevlex" and (self.weights is None or len(self.weights) != self.nvars):
            raise ValueError("wdegrevlex needs one weight per variable")
        if self.priority is not None and sorted(self.priority) != list(range(self.nvars)):
            raise ValueError("priority must be a permutation of the variables")

    @classmethod
    def for_universe(cls, kind: str, universe: VarTable, block: Iterable = ()) -> "MonomialOrder":
        return cls(
            kind,
            len(universe),
            weights=universe.weights if kind == "wdegrevlex" else None,
            block=frozenset(universe.index_of(v) for v in block),
        )

    def key(self, m: tuple) -> tuple:
        """Sort key: ``a < b`` in this order iff ``key(a) < key(b)``."""
        k = self._cache.get(m)
        if k is None:
            k = self._compute_key(m)
            self._cache[m] = k
        return k

    def _compute_key(self, m):
        if self.priority is not None:
            m = tuple(m[i] for i in self.priority)
        if self.kind == "lex":
            return m
        rev = tuple(-e for e in reversed(m))
        if self.kind == "degrevlex":
            return (sum(m),) + rev
        if self.kind == "wdegrevlex":
            w = self.weights if self.priority is None else tuple(self.weights[i] for i in self.priority)
            return (sum(map(operator.mul, m, w)), sum(m)) + rev
        blk = self.block if self.priority is None else frozenset(self.priority.index(i) for i in self.block)
        return (sum(m[i] for i in blk), sum(m)) + rev

    def descriptor(self, universe: VarTable | None = None) -> dict:
        d = {"kind": self.kind}
        if self.block:
            blk = sorted(self.block)
            d["block"] = [universe.names[i] for i in blk] if universe is not None else blk
        return d


# -- ideals --------------------------------------------------------------------


class Ideal:
    """Ideal generated by a list of polynomials in one universe; zero generators are dropped."""

    def __init__(self, gens: Iterable[Polynomial], universe: VarTable | None = None):
        gens = list(gens)
        if universe is None:
            if not gens:
                raise ValueError("universe required for an ideal without generators")
            universe = gens[0].universe
        for g in gens:
            if g.universe != universe:
                raise UniverseMismatch("generator outside the ideal's universe")
        self.universe = universe
        self.gens = [g for g in gens if g]

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.universe != self.universe:
            raise UniverseMismatch("ideals live in different universes")
        return Ideal(self.gens + other.gens, self.universe)

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {len(self.universe)} variables)"


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis, sorted by decreasing leading monomial."""

    basis: list[Polynomial]
    order: MonomialOrder
    universe: VarTable
    reduced: bool = True
    reductions: int = 0

    def leading_monomials(self) -> list[tuple]:
        return [max(g.terms, key=self.order.key) for g in self.basis]

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    def to_report(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "order": self.order.descriptor(self.universe),
            "variables": list(self.universe.names),
            "basis": [g.to_str(self.order) for g in self.basis],
        }


# -- engine internals ----------------------------------------------------------
#
# Polynomials inside the engine are plain dicts {monomial: Fraction}.


def _madd(a, b):
    return tuple(map(operator.add, a, b))


def _msub(a, b):
    return tuple(map(operator.sub, a, b))


def _mlcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b):
    return all(map(operator.le, a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def _mask(m):
    bits = 0
    for i, e in enumerate(m):
        if e:
            bits |= 1 << i
    return bits


class _Reducer:
    """Reduction set: leading data cached for fast divisor lookup."""

    def __init__(self, key):
        self.key = key
        self.polys = []  # (lm, mask, lc, tail-as-list)

    def add(self, poly: dict):
        key = self.key
        lm = max(poly, key=key)
        lc = poly[lm]
        tail = [(m, c) for m, c in poly.items() if m != lm]
        self.polys.append((lm, _mask(lm), lc, tail))
        return len(self.polys) - 1

    def find(self, m, mask, active=None):
        for idx, (lm, lmask, lc, tail) in enumerate(self.polys):
            if lmask & ~mask:
                continue
            if active is not None and not active[idx]:
                continue
            if _divides(lm, m):
                return idx
        return None

    def reduce(self, f: dict, budget: Budget, active=None, full=True) -> dict:
        """Remainder of ``f`` under division by the stored polynomials."""
        key = self.key
        f = dict(f)
        heap = [(_neg(key(m)), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        polys = self.polys
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            idx = self.find(m, _mask(m), active)
            if idx is None:
                rem[m] = c
                if not full:
                    for mm, cc in f.items():
                        rem[mm] = cc
                    return rem
                continue
            lm, _, lc, tail = polys[idx]
            q = c / lc
            shift = _msub(m, lm)
            for tm, tc in tail:
                nm = _madd(tm, shift)
                old = f.get(nm)
                if old is None:
                    f[nm] = -q * tc
                    heapq.heappush(heap, (_neg(key(nm)), nm))
                else:
                    nc = old - q * tc
                    if nc:
                        f[nm] = nc
                    else:
                        del f[nm]
            if len(f) > budget.terms:
                budget.check_terms(len(f))
        return rem


def _neg(k):
    return tuple(-x for x in k)


def _monic(f: dict, key) -> dict:
    lc = f[max(f, key=key)]
    if lc == 1:
        return f
    return {m: c / lc for m, c in f.items()}


def _spoly(f, lmf, g, lmg):
    lcm = _mlcm(lmf, lmg)
    sf = _msub(lcm, lmf)
    sg = _msub(lcm, lmg)
    cf = f[lmf]
    cg = g[lmg]
    out = {}
    for m, c in f.items():
        out[_madd(m, sf)] = c / cf
    for m, c in g.items():
        nm = _madd(m, sg)
        v = out.get(nm, 0) - c / cg
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _groebner_dicts(gens: Sequence[dict], order: MonomialOrder, budget: Budget):
    """Reduced Groebner basis (list of monic dicts) and the number of S-pair reductions."""
    key = order.key
    red = _Reducer(key)
    lms: list = []
    active: list = []
    pairs: list = []  # (lcm key, i, j, lcm)
    reductions = 0

    def update(h: dict):
        nonlocal pairs
        hidx = red.add(h)
        lmh = red.polys[hidx][0]
        lms.append(lmh)
        active.append(True)
        # Gebauer-Moeller: prune the new pairs (g, h) among themselves.
        cand = [(g, _mlcm(lms[g], lmh)) for g in range(hidx) if active[g]]
        kept = []
        for pos, (g, l) in enumerate(cand):
            if _coprime(lms[g], lmh):
                kept.append((g, l))
                continue
            rest = cand[pos + 1:]
            if any(_divides(l2, l) for _, l2 in rest) or any(_divides(l2, l) for _, l2 in kept):
                continue
            kept.append((g, l))
        new_pairs = [(key(l), g, hidx, l) for g, l in kept if not _coprime(lms[g], lmh)]
        # Chain criterion on the old pairs.
        survivors = [
            (kp, i, j, l)
            for kp, i, j, l in pairs
            if not (_divides(lmh, l) and _mlcm(lms[i], lmh) != l and _mlcm(lms[j], lmh) != l)
        ]
        pairs = survivors + new_pairs
        heapq.heapify(pairs)
        for g in range(hidx):
            if active[g] and _divides(lmh, lms[g]):
                active[g] = False

    for g in gens:
        if not g:
            continue
        h = red.reduce(g, budget, active)
        if h:
            update(_monic(h, key))
            if sum(lms[-1]) == 0:
                return [{lms[-1]: Fraction(1)}], reductions

    while pairs:
        _, i, j, _ = heapq.heappop(pairs)
        reductions += 1
        if reductions > budget.reductions:
            raise BudgetExceeded(f"more than {budget.reductions} S-pair reductions")
        s = _spoly_idx(red, i, j)
        h = red.reduce(s, budget, active)
        if h:
            update(_monic(h, key))
            if sum(lms[-1]) == 0:
                return [{lms[-1]: Fraction(1)}], reductions

    # minimal basis, then interreduce
    basis_idx = [i for i in range(len(lms)) if active[i]]
    minimal = []
    for i in basis_idx:
        if not any(j != i and _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i) for j in basis_idx):
            minimal.append(i)
    polys = [_to_dict(red.polys[i]) for i in minimal]
    out = []
    for pos, f in enumerate(polys):
        others = _Reducer(key)
        for q, g in enumerate(polys):
            if q != pos:
                others.add(g)
        lm = max(f, key=key)
        tail = {m: c for m, c in f.items() if m != lm}
        r = others.reduce(tail, budget) if tail else {}
        r[lm] = f[lm]
        out.append(_monic(r, key))
    out.sort(key=lambda f: key(max(f, key=key)), reverse=True)
    return out, reductions


def _to_dict(entry):
    lm, _, lc, tail = entry
    d = dict(tail)
    d[lm] = lc
    return d


def _spoly_idx(red: _Reducer, i, j):
    f = _to_dict(red.polys[i])
    g = _to_dict(red.polys[j])
    return _spoly(f, red.polys[i][0], g, red.polys[j][0])


# -- public API ----------------------------------------------------------------


def _as_ideal(I) -> Ideal:
    return I if isinstance(I, Ideal) else Ideal(I)


def default_order(universe: VarTable, kind: str = "degrevlex") -> MonomialOrder:
    return MonomialOrder.for_universe(kind, universe)


def _split_variables(polys):
    """Peel off generators that are single variables, setting them to zero in the rest (to a fixed point).

    A reduced basis of ``(Z) + J`` with ``J`` free of ``Z`` is ``Z`` together
    with a reduced basis of ``J``, so the variables never enter the pair loop.
    """
    zeros: set[int] = set()
    rest = [d for d in polys if d]
    while True:
        new = {m.index(1) for d in rest if len(d) == 1 for m in d if sum(m) == 1}
        if not new:
            return sorted(zeros), rest
        zeros |= new
        rest = [{m: c for m, c in d.items() if not any(m[z] for z in new)} for d in rest]
        rest = [d for d in rest if d]


def buchberger(I, order: MonomialOrder | str | None = None, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``; deterministic for fixed input."""
    I = _as_ideal(I)
    if not I.gens:
        raise ValueError("zero ideal")
    if order is None or isinstance(order, str):
        order = default_order(I.universe, order or "degrevlex")
    if order.nvars != len(I.universe):
        raise ValueError("order and universe disagree on the number of variables")
    zeros, rest = _split_variables([g.terms for g in I.gens])
    n = len(I.universe)
    basis, reds = _groebner_dicts(rest, order, budget) if rest else ([], 0)
    if not (len(basis) == 1 and len(basis[0]) == 1 and not any(next(iter(basis[0])))):
        basis = basis + [{tuple(int(i == z) for i in range(n)): Fraction(1)} for z in zeros]
        basis.sort(key=lambda d: order.key(max(d, key=order.key)), reverse=True)
    polys = [Polynomial._raw(I.universe, d) for d in basis]
    return GroebnerBasis(polys, order, I.universe, reduced=True, reductions=reds)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (zero iff ``f`` lies in the ideal)."""
    if f.universe != G.universe:
        raise UniverseMismatch("polynomial and basis live in different universes")
    red = _Reducer(G.order.key)
    for g in G.basis:
        red.add(g.terms)
    return Polynomial._raw(G.universe, red.reduce(f.terms, DEFAULT_BUDGET))


def ideal_membership(f: Polynomial, I, order=None, budget: Budget = DEFAULT_BUDGET, basis: GroebnerBasis | None = None) -> bool:
    """Whether ``f`` lies in ``I``."""
    if not f:
        return True
    G = basis or buchberger(I, order, budget)
    return not normal_form(f, G)


def _fresh_name(universe: VarTable, stem: str) -> str:
    name, k = stem, 0
    while name in universe.index:
        k += 1
        name = f"{stem}{k}"
    return name


def radical_membership(f: Polynomial, I, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Whether ``f`` vanishes on ``V(I)``: ``1 in I + (1 - t f)`` for a fresh ``t``."""
    I = _as_ideal(I)
    if f.universe != I.universe:
        raise UniverseMismatch("polynomial and ideal live in different universes")
    if not f:
        return True
    t_name = _fresh_name(I.universe, "T_rad")
    big = I.universe.extend([t_name])
    t = big.var(t_name)
    gens = [g.lift(big) for g in I.gens] + [big.one() - t * f.lift(big)]
    order = MonomialOrder.for_universe("elim", big, block=[t_name])
    G = buchberger(Ideal(gens, big), order, budget)
    return G.is_unit()


def eliminate(I, variables: Iterable, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """``I`` intersected with the subring free of ``variables``, in the smaller universe."""
    I = _as_ideal(I)
    drop = [I.universe.index_of(v) for v in variables]
    order = MonomialOrder.for_universe("elim", I.universe, block=drop)
    G = buchberger(I, order, budget)
    small = I.universe.without(drop)
    keep = [g for g in G.basis if not (g.variables() & set(drop))]
    return Ideal([g.rename({}, small) for g in keep], small)


def ideal_intersection(I, J, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """Generators of ``I`` intersected with ``J``, by eliminating ``t`` from ``tI + (1-t)J``."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.universe != J.universe:
        raise UniverseMismatch("ideals live in different universes")
    t_name = _fresh_name(I.universe, "T_int")
    big = I.universe.extend([t_name])
    t = big.var(t_name)
    gens = [t * g.lift(big) for g in I.gens] + [(big.one() - t) * g.lift(big) for g in J.gens]
    out = eliminate(Ideal(gens, big), [t_name], budget)
    return Ideal([g.rename({}, I.universe) for g in out.gens], I.universe)


def ideal_equal(I, J, budget: Budget = DEFAULT_BUDGET, order=None) -> bool:
    """Whether ``I`` and ``J`` are the same ideal (mutual generator membership)."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.universe != J.universe:
        raise UniverseMismatch("ideals live in different universes")
    GI = buchberger(I, order, budget) if I.gens else None
    GJ = buchberger(J, order, budget) if J.gens else None
    if GI is None or GJ is None:
        return GI is None and GJ is None
    return all(not normal_form(g, GI) for g in J.gens) and all(not normal_form(g, GJ) for g in I.gens)


# -- dimension -----------------------------------------------------------------


@dataclass
class DimensionResult:
    """Krull dimension of ``V(I)`` with a maximal independent variable set as witness."""

    dim: int
    witness: tuple[str, ...]
    nvars: int
    order: dict = field(default_factory=dict)
    basis_size: int = 0

    def to_report(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dim": self.dim,
            "witness": list(self.witness),
            "nvars": self.nvars,
            "order": self.order,
            "basis_size": self.basis_size,
        }


def min_hitting_set(sets: Iterable[frozenset]) -> frozenset:
    """A minimum-size set meeting every set in ``sets`` (branch and bound)."""
    family = sorted({frozenset(s) for s in sets}, key=lambda s: (len(s), sorted(s)))
    if any(not s for s in family):
        raise ValueError("empty set cannot be hit")
    minimal = []
    for s in family:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = [frozenset().union(*minimal) if minimal else frozenset()]

    def lower_bound(rest):
        # disjoint sets each need their own element
        used, count = set(), 0
        for s in rest:
            if not (s & used):
                used |= s
                count += 1
        return count

    def search(rest, chosen):
        if not rest:
            if len(chosen) < len(best[0]):
                best[0] = frozenset(chosen)
            return
        if len(chosen) + lower_bound(rest) >= len(best[0]):
            return
        pivot = min(rest, key=lambda s: (len(s), sorted(s)))
        for v in sorted(pivot):
            search([s for s in rest if v not in s], chosen | {v})

    search(minimal, frozenset())
    return best[0]


def krull_dimension(I, order: MonomialOrder | str | None = None, budget: Budget = DEFAULT_BUDGET,
                    basis: GroebnerBasis | None = None) -> DimensionResult:
    """Dimension of ``V(I)``: the largest variable set free of every leading monomial."""
    I = _as_ideal(I)
    G = basis or buchberger(I, order, budget)
    if G.is_unit():
        raise ImproperIdeal("1 lies in the ideal; the variety is empty")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in G.leading_monomials()]
    hit = min_hitting_set(supports)
    witness = tuple(I.universe.names[i] for i in range(len(I.universe)) if i not in hit)
    return DimensionResult(len(I.universe) - len(hit), witness, len(I.universe), G.order.descriptor(I.universe), len(G.basis))
