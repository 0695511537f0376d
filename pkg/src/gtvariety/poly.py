"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are dense exponent tuples aligned with a :class:`VarTable`; a
polynomial is a map from monomial to nonzero :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import operator
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

Monomial = tuple  # tuple[int, ...], one exponent per universe variable

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class UniverseMismatch(ValueError):
    """Raised when polynomials from different variable universes are combined."""


class Inhomogeneous(ValueError):
    """Raised when a polynomial has terms of different weighted degree."""


@dataclass(frozen=True, eq=False)
class VarTable:
    """An ordered set of named commuting variables with positive integer weights."""

    names: tuple[str, ...]
    weights: tuple[int, ...] = None

    def __post_init__(self):
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for name in self.names:
            if not NAME_RE.fullmatch(name):
                raise ValueError(f"bad variable name {name!r}")

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if not isinstance(other, VarTable):
            return NotImplemented
        return self is other or (self.names == other.names and self.weights == other.weights)

    def __hash__(self):
        return hash((self.names, self.weights))

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def var(self, v) -> "Polynomial":
        """The polynomial consisting of the single variable ``v`` (name or index)."""
        i = self.index_of(v)
        exps = [0] * len(self.names)
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def index_of(self, v) -> int:
        if isinstance(v, str):
            try:
                return self.index[v]
            except KeyError:
                raise KeyError(f"{v!r} is not a variable of this universe") from None
        if not 0 <= v < len(self.names):
            raise IndexError(f"variable index {v} out of range")
        return v

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * len(self.names): Fraction(c)})

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None) -> "VarTable":
        """A new universe with ``names`` appended after the existing variables."""
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return VarTable(self.names + tuple(names), self.weights + weights)

    def without(self, drop: Iterable) -> "VarTable":
        """A new universe with the given variables removed."""
        drop_idx = {self.index_of(v) for v in drop}
        keep = [i for i in range(len(self.names)) if i not in drop_idx]
        return VarTable(tuple(self.names[i] for i in keep), tuple(self.weights[i] for i in keep))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


@dataclass(frozen=True, eq=False)
class YangianVarTable(VarTable):
    """Variables ``X_ij^(k)`` for ``1 <= i, j <= n`` and ``1 <= k <= p``, with weight ``k``.

    Text names follow ``X<i><j>_<k>``. Variables are laid out level-major:
    all of level 1 in row-major order, then level 2, and so on.
    """

    n: int = field(default=1, kw_only=True)
    p: int = field(default=1, kw_only=True)

    @classmethod
    def create(cls, n: int, p: int) -> "YangianVarTable":
        if n < 1 or p < 1:
            raise ValueError("n and p must be positive")
        names, weights = [], []
        for k in range(1, p + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    names.append(var_name(i, j, k))
                    weights.append(k)
        return cls(tuple(names), tuple(weights), n=n, p=p)

    def vid(self, i: int, j: int, k: int) -> int:
        """VarId of ``X_ij^(k)``."""
        if not (1 <= i <= self.n and 1 <= j <= self.n and 1 <= k <= self.p):
            raise IndexError(f"X{i}{j}^({k}) outside n={self.n}, p={self.p}")
        return (k - 1) * self.n * self.n + (i - 1) * self.n + (j - 1)

    def triple(self, vid: int) -> tuple[int, int, int]:
        k, rest = divmod(vid, self.n * self.n)
        i, j = divmod(rest, self.n)
        return i + 1, j + 1, k + 1

    def x(self, i: int, j: int, k: int) -> "Polynomial":
        """``X_ij^(k)``, with ``X^(0) = delta_ij`` and ``X^(k) = 0`` for ``k > p``."""
        if k == 0:
            return self.const(1) if i == j else self.zero()
        if k > self.p:
            return self.zero()
        return self.var(self.vid(i, j, k))


def var_name(i: int, j: int, k: int) -> str:
    return f"X{i}{j}_{k}"


def _add_monos(a, b):
    return tuple(map(operator.add, a, b))


class Polynomial:
    """Immutable sparse polynomial over the rationals in a fixed universe."""

    __slots__ = ("universe", "terms", "_hash")

    def __init__(self, universe: VarTable, terms: Mapping | None = None):
        self.universe = universe
        clean = {}
        if terms:
            n = len(universe)
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("monomial length does not match universe")
                if c:
                    clean[m] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, universe, terms):
        obj = cls.__new__(cls)
        obj.universe = universe
        obj.terms = terms
        obj._hash = None
        return obj

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.universe != self.universe:
                raise UniverseMismatch("polynomials live in different universes")
            return other
        if isinstance(other, (int, Fraction)):
            return self.universe.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.universe, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.universe.zero()
            return Polynomial._raw(self.universe, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _add_monos(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.universe, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.universe.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.universe.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.universe.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        """Indices of variables occurring in some term."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def variable_names(self) -> list[str]:
        return [self.universe.names[i] for i in sorted(self.variables())]

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def weighted_degree(self) -> int:
        """Common weighted degree of all terms; raises :class:`Inhomogeneous` otherwise."""
        if not self.terms:
            raise ValueError("zero polynomial has no weighted degree")
        w = self.universe.weights
        degs = {sum(e * wi for e, wi in zip(m, w)) for m in self.terms}
        if len(degs) != 1:
            raise Inhomogeneous(f"terms have weighted degrees {sorted(degs)}")
        return degs.pop()

    def is_weighted_homogeneous(self) -> bool:
        try:
            self.weighted_degree()
        except Inhomogeneous:
            return False
        return True

    def as_variable(self) -> int | None:
        """Index ``i`` if this polynomial is exactly a nonzero multiple of one variable."""
        if len(self.terms) != 1:
            return None
        (m,) = self.terms
        if sum(m) != 1:
            return None
        return m.index(1)

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    # -- transformations ------------------------------------------------------

    def substitute_zero(self, xs: Iterable) -> "Polynomial":
        """``self`` with every variable in ``xs`` (names or indices) set to 0."""
        idx = [self.universe.index_of(v) for v in xs]
        if not idx:
            return self
        return Polynomial._raw(
            self.universe,
            {m: c for m, c in self.terms.items() if not any(m[i] for i in idx)},
        )

    def substitute(self, values: Mapping) -> "Polynomial":
        """Replace variables by constants or polynomials of the same universe."""
        subs = {self.universe.index_of(k): v for k, v in values.items()}
        result = self.universe.zero()
        for m, c in self.terms.items():
            keep = list(m)
            term = self.universe.const(c)
            for i, v in subs.items():
                if m[i]:
                    keep[i] = 0
                    term = term * (v ** m[i] if isinstance(v, Polynomial) else self.universe.const(Fraction(v) ** m[i]))
            result = result + term * Polynomial._raw(self.universe, {tuple(keep): Fraction(1)})
        return result

    def rename(self, mapping: Mapping, target: VarTable | None = None) -> "Polynomial":
        """Image under an injective variable map ``mapping`` (names or indices).

        Variables of ``self`` missing from ``mapping`` keep their name. The result
        lives in ``target`` (default: this universe).
        """
        target = target or self.universe
        src = {self.universe.index_of(k): target.index_of(v) for k, v in mapping.items()}
        if len(set(src.values())) != len(src):
            raise ValueError("variable map is not injective")
        images = {
            i: src[i] if i in src else target.index_of(self.universe.names[i])
            for i in self.variables()
        }
        if len(set(images.values())) != len(images):
            raise ValueError("variable map is not injective on the support")
        n = len(target)
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    new[images[i]] += e
            out[tuple(new)] = c
        return Polynomial._raw(target, out)

    def lift(self, target: VarTable) -> "Polynomial":
        """Same polynomial in a universe containing all of this one's variable names."""
        return self.rename({}, target) if target != self.universe else self

    def evaluate(self, point) -> Fraction:
        """Exact value at ``point``.

        ``point`` may be a sequence aligned with the universe, a mapping from
        variable names to values, or an object with an ``assignment(universe)``
        method returning such a sequence.
        """
        values = _point_values(point, self.universe, self.variables())
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    t *= values[i] ** e
                    if not t:
                        break
            total += t
        return total

    # -- text -----------------------------------------------------------------

    def sorted_terms(self, order=None):
        """Terms in decreasing order (default: degree-reverse-lexicographic)."""
        key = order.key if order is not None else _drl_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def to_str(self, order=None) -> str:
        if not self.terms:
            return "0"
        names = self.universe.names
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e:
                    factors.append(f"{names[i]}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def _drl_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def _point_values(point, universe: VarTable, needed) -> list:
    if hasattr(point, "assignment"):
        point = point.assignment(universe)
    if isinstance(point, Mapping):
        values = [None] * len(universe)
        for name, v in point.items():
            if name in universe.index:
                values[universe.index[name]] = Fraction(v)
    else:
        values = [Fraction(v) for v in point]
        if len(values) != len(universe):
            raise ValueError("point length does not match universe")
    missing = [universe.names[i] for i in needed if values[i] is None]
    if missing:
        raise ValueError(f"point assigns no value to {missing}")
    return values


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-]))")


def parse_polynomial(text: str, universe: VarTable) -> Polynomial:
    """Parse ``c*x^e*y + ...`` text (integer or ``a/b`` coefficients) into a polynomial."""
    pos, n = 0, len(text)
    tokens = []
    while pos < n:
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        kind = mt.lastindex
        tokens.append((kind, mt.group(kind)))
        pos = mt.end()
    if not tokens:
        raise ValueError("empty polynomial text")

    result = universe.zero()
    i = 0
    sign = 1
    expect_term = True
    width = len(universe)
    while i < len(tokens):
        kind, tok = tokens[i]
        if kind == 5:
            if not expect_term and tok in "+-":
                sign = 1 if tok == "+" else -1
                expect_term = True
            elif expect_term:
                sign *= 1 if tok == "+" else -1
            i += 1
            continue
        if not expect_term:
            raise ValueError(f"unexpected token {tok!r}")
        coeff = Fraction(sign)
        exps = [0] * width
        need_factor = True
        while i < len(tokens):
            kind, tok = tokens[i]
            if kind == 1:
                coeff *= Fraction(tok)
                i += 1
            elif kind == 2:
                vi = universe.index_of(tok)
                i += 1
                e = 1
                if i < len(tokens) and tokens[i][0] == 3:
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != 1 or "/" in tokens[i + 1][1]:
                        raise ValueError("exponent must be a nonnegative integer")
                    e = int(tokens[i + 1][1])
                    i += 2
                exps[vi] += e
            else:
                raise ValueError(f"unexpected token {tok!r}")
            need_factor = False
            if i < len(tokens) and tokens[i][0] == 4:
                i += 1
                need_factor = True
                continue
            break
        if need_factor:
            raise ValueError("dangling '*'")
        result = result + Polynomial._raw(universe, {tuple(exps): coeff} if coeff else {})
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError("polynomial text ends with an operator")
    return result


# -- series in the formal variable u ------------------------------------------

@dataclass(frozen=True)
class USeries:
    """Polynomial in a formal variable ``u`` with :class:`Polynomial` coefficients.

    ``coeffs[d]`` is the coefficient of ``u**d``.
    """

    coeffs: tuple

    @classmethod
    def matrix_entry(cls, table: YangianVarTable, i: int, j: int) -> "USeries":
        """``X_ij(u) = delta_ij u^p + sum_k X_ij^(k) u^(p-k)``."""
        p = table.p
        coeffs = [table.x(i, j, p - d) for d in range(p + 1)]
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "USeries") -> "USeries":
        universe = self.coeffs[0].universe
        out = [universe.zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for a, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(other.coeffs):
                if cb:
                    out[a + b] = out[a + b] + ca * cb
        return USeries(tuple(out))

    def __add__(self, other: "USeries") -> "USeries":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for d, c in enumerate(b):
            out[d] = out[d] + c
        return USeries(tuple(out))

    def scale(self, c) -> "USeries":
        return USeries(tuple(x * c for x in self.coeffs))
