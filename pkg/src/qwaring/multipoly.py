"""Sparse multivariate polynomials over field-tower coefficients.

Carries the forms q_n^s, their duals, and differential operators.  The
apolarity (polar-differentiation) pairing follows the monomial rule

    y^a o x^b  =  b!/(b-a)! * x^(b-a)   if b-a >= 0, else 0,

extended bilinearly; it coincides with iterated partial differentiation.
Coefficients are rationals or :class:`~qwaring.exactfield.AlgNum` elements;
plain monomial coefficients are stored and divided-power normalizations are
applied at call sites.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionMismatch, RingMismatch
from .exactfield import (
    SCALAR_TYPES,
    AlgNum,
    FieldTower,
    Rational,
    algnum_from_json,
    algnum_to_json,
)

#: exponent vector, one entry per variable
MultiIndex = tuple

#: polynomial coefficient: exact rational or tower element
Coeff = Union[Rational, AlgNum]

#: point of C^n with exact coordinates
Point = tuple

PRIMAL = "x"
DUAL = "y"


def coeff_is_zero(c) -> bool:
    if isinstance(c, AlgNum):
        return c.is_zero()
    return c == 0


def coeff_inv(c):
    if isinstance(c, AlgNum):
        return c.inverse()
    return 1 / Rational(c)


def _norm_coeff(c):
    if isinstance(c, int):
        return Rational(c)
    return c


class MultiPoly:
    """Sparse polynomial; terms map exponent tuples to nonzero coefficients."""

    __slots__ = ("n_vars", "ring", "terms")

    def __init__(self, n_vars: int, ring: str, terms: Mapping | None = None):
        if ring not in (PRIMAL, DUAL):
            raise RingMismatch(f"ring tag must be {PRIMAL!r} or {DUAL!r}")
        self.n_vars = n_vars
        self.ring = ring
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n_vars:
                    raise DimensionMismatch(
                        f"exponent vector {exps} has length != {n_vars}"
                    )
                c = _norm_coeff(c)
                if not coeff_is_zero(c):
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int, ring: str = PRIMAL) -> "MultiPoly":
        return cls(n_vars, ring)

    @classmethod
    def constant(cls, n_vars: int, c, ring: str = PRIMAL) -> "MultiPoly":
        return cls(n_vars, ring, {(0,) * n_vars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, ring: str = PRIMAL) -> "MultiPoly":
        return cls(len(exps), ring, {tuple(exps): c})

    @classmethod
    def variable(cls, i: int, n_vars: int, ring: str = PRIMAL) -> "MultiPoly":
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, ring, {tuple(e): Rational(1)})

    def retag(self, ring: str) -> "MultiPoly":
        return MultiPoly(self.n_vars, ring, self.terms)

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), Rational(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.n_vars == other.n_vars
            and self.ring == other.ring
            and (self - other).is_zero()
        )

    def __hash__(self):
        return hash((self.n_vars, self.ring, frozenset(self.terms)))

    def _check(self, other: "MultiPoly") -> None:
        if self.n_vars != other.n_vars or self.ring != other.ring:
            raise RingMismatch(
                f"operands live in different rings: "
                f"({self.n_vars} vars, {self.ring!r}) vs "
                f"({other.n_vars} vars, {other.ring!r})"
            )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            new = c if cur is None else cur + c
            if coeff_is_zero(new):
                terms.pop(e, None)
            else:
                terms[e] = new
        out = MultiPoly.__new__(MultiPoly)
        out.n_vars, out.ring, out.terms = self.n_vars, self.ring, terms
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.n_vars, out.ring = self.n_vars, self.ring
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (AlgNum,) + SCALAR_TYPES):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = terms.get(e)
                new = c if cur is None else cur + c
                if coeff_is_zero(new):
                    terms.pop(e, None)
                else:
                    terms[e] = new
        out = MultiPoly.__new__(MultiPoly)
        out.n_vars, out.ring, out.terms = self.n_vars, self.ring, terms
        return out

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = _norm_coeff(c)
        if coeff_is_zero(c):
            return MultiPoly.zero(self.n_vars, self.ring)
        if (c.rational_value() if isinstance(c, AlgNum) else c) == 1:
            return self
        out = MultiPoly.__new__(MultiPoly)
        out.n_vars, out.ring = self.n_vars, self.ring
        out.terms = {e: v * c for e, v in self.terms.items()}
        return out

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = MultiPoly.constant(self.n_vars, Rational(1), self.ring)
        for _ in range(e):
            result = result * self
        return result

    # -- display ---------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = [f"{self.ring}{i+1}" for i in range(self.n_vars)]
        parts = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), tuple(-a for a in t))):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e)
                if k
            )
            cs = repr(c) if isinstance(c, AlgNum) else str(c)
            parts.append(f"({cs})*{mono}" if mono else f"({cs})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# monomial utilities
# ---------------------------------------------------------------------------

def monomials(n: int, d: int) -> list[MultiIndex]:
    """Degree-d exponent vectors in n variables, graded-lex order."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out: list[tuple] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for first in range(remaining, -1, -1):
            rec(prefix + (first,), remaining - first, slots - 1)

    rec((), d, n)
    return out


def multinomial(d: int, exps: Iterable[int]) -> int:
    c = math.factorial(d)
    for e in exps:
        c //= math.factorial(e)
    return c


# ---------------------------------------------------------------------------
# the forms q_n^s and powers of linear forms
# ---------------------------------------------------------------------------

def q_poly(n: int, ring: str = PRIMAL) -> MultiPoly:
    """The quadratic form x_1^2 + ... + x_n^2."""
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = 2
        terms[tuple(e)] = Rational(1)
    return MultiPoly(n, ring, terms)


def q_power(n: int, s: int, divided: bool = False, ring: str = PRIMAL) -> MultiPoly:
    """q_n^s, or q_n^s / (2^s s!) when ``divided``.

    Expanded directly: q_n^s = sum_{|k|=s} (s!/k!) x^(2k).
    """
    if n < 1 or s < 0:
        raise ValueError("need n >= 1 and s >= 0")
    terms = {}
    for k in monomials(n, s):
        c = Rational(multinomial(s, k))
        if divided:
            c /= Rational(2**s * math.factorial(s))
        terms[tuple(2 * e for e in k)] = c
    return MultiPoly(n, ring, terms)


def linear_form(a: Sequence, ring: str = PRIMAL) -> MultiPoly:
    n = len(a)
    terms = {}
    for i, c in enumerate(a):
        e = [0] * n
        e[i] = 1
        terms[tuple(e)] = c
    return MultiPoly(n, ring, terms)


def linear_power(a: Sequence, d: int, divided: bool = False,
                 ring: str = PRIMAL) -> MultiPoly:
    """(a.x)^d by multinomial expansion, divided by d! when ``divided``.

    Only the support of ``a`` is enumerated, and coordinates are grouped by
    exact value so power products are shared; points with few nonzero or few
    distinct coordinates expand fast regardless of the ambient dimension.
    """
    if d < 0:
        raise ValueError("need d >= 0")
    n = len(a)
    support = []
    classes = []       # distinct coordinate values
    class_of = []      # class index per support position
    for i, raw in enumerate(a):
        c = _norm_coeff(raw)
        if coeff_is_zero(c):
            continue
        support.append(i)
        for j, v in enumerate(classes):
            if v == c:
                class_of.append(j)
                break
        else:
            class_of.append(len(classes))
            classes.append(c)
    tables = []
    for v in classes:
        t = [Rational(1)]
        for _ in range(d):
            t.append(t[-1] * v)
        tables.append(t)
    prod_cache: dict = {}
    terms = {}
    for alpha in monomials(len(support), d):
        denom = 1
        split = [0] * len(classes)
        for pos, e in enumerate(alpha):
            if e:
                denom *= math.factorial(e)
                split[class_of[pos]] += e
        key = tuple(split)
        base = prod_cache.get(key)
        if base is None:
            base = Rational(1)
            for t, e in zip(tables, key):
                if e:
                    base = base * t[e]
            prod_cache[key] = base
        c = Rational(math.factorial(d), denom) if not divided else Rational(1, denom)
        exps = [0] * n
        for i, e in zip(support, alpha):
            exps[i] = e
        terms[tuple(exps)] = base * c
    return MultiPoly(n, ring, terms)


# ---------------------------------------------------------------------------
# apolarity action, Laplacian, evaluation
# ---------------------------------------------------------------------------

def contract(phi: MultiPoly, f: MultiPoly) -> MultiPoly:
    """Apolarity action phi o f of a dual form on a primal form."""
    if phi.n_vars != f.n_vars:
        raise RingMismatch("contract needs matching variable counts")
    if phi.ring != DUAL or f.ring != PRIMAL:
        raise RingMismatch("contract expects a dual operator and a primal form")
    terms: dict = {}
    for alpha, ca in phi.terms.items():
        for beta, cb in f.terms.items():
            gamma = []
            factor = 1
            ok = True
            for a, b in zip(alpha, beta):
                if b < a:
                    ok = False
                    break
                gamma.append(b - a)
                # falling factorial b!/(b-a)!
                for t in range(b, b - a, -1):
                    factor *= t
            if not ok:
                continue
            g = tuple(gamma)
            c = (ca * cb) * factor if factor != 1 else ca * cb
            cur = terms.get(g)
            new = c if cur is None else cur + c
            if coeff_is_zero(new):
                terms.pop(g, None)
            else:
                terms[g] = new
    return MultiPoly(f.n_vars, PRIMAL, terms)


def laplacian(f: MultiPoly) -> MultiPoly:
    """Sum of second partials; equals contract(q_n, f) on primal forms."""
    terms: dict = {}
    for exps, c in f.terms.items():
        for i, e in enumerate(exps):
            if e < 2:
                continue
            g = list(exps)
            g[i] -= 2
            g = tuple(g)
            add = c * (e * (e - 1))
            cur = terms.get(g)
            new = add if cur is None else cur + add
            if coeff_is_zero(new):
                terms.pop(g, None)
            else:
                terms[g] = new
    return MultiPoly(f.n_vars, f.ring, terms)


def evaluate(f: MultiPoly, a: Sequence):
    """Exact substitution of point coordinates."""
    if len(a) != f.n_vars:
        raise DimensionMismatch("point length != variable count")
    coords = [_norm_coeff(c) for c in a]
    d = max(f.degree(), 0)
    tables = {}
    for i, ci in enumerate(coords):
        if coeff_is_zero(ci):
            continue
        t = [Rational(1)]
        for _ in range(d):
            t.append(t[-1] * ci)
        tables[i] = t
    total = Rational(0)
    for exps, c in f.terms.items():
        val = c
        dead = False
        for i, e in enumerate(exps):
            if not e:
                continue
            t = tables.get(i)
            if t is None:
                dead = True
                break
            val = val * t[e]
        if not dead:
            total = total + val
    return total


def dot(a: Sequence, b: Sequence):
    """Complex bilinear (not Hermitian) product sum a_i b_i."""
    if len(a) != len(b):
        raise DimensionMismatch("points of different lengths")
    total = Rational(0)
    for x, y in zip(a, b):
        total = total + _norm_coeff(x) * _norm_coeff(y)
    return total


def substitute(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """Substitute variable i -> images[i]; images share ring/var-count."""
    if len(images) != f.n_vars:
        raise DimensionMismatch("need one image per variable")
    n_out = images[0].n_vars
    ring = images[0].ring
    d = max(f.degree(), 0)
    pow_tables = []
    for g in images:
        table = [MultiPoly.constant(n_out, Rational(1), ring)]
        for _ in range(d):
            table.append(table[-1] * g)
        pow_tables.append(table)
    out = MultiPoly.zero(n_out, ring)
    for exps, c in f.terms.items():
        term = MultiPoly.constant(n_out, c, ring)
        for i, e in enumerate(exps):
            if e:
                term = term * pow_tables[i][e]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def poly_to_json(f: MultiPoly) -> dict:
    # canonical graded-lex term order, matching monomials()
    ordered = sorted(f.terms.items(),
                     key=lambda item: (sum(item[0]), tuple(-e for e in item[0])))
    return {
        "n": f.n_vars,
        "ring": f.ring,
        "terms": [
            {"exp": list(e), "coeff": algnum_to_json(c)} for e, c in ordered
        ],
    }


def poly_from_json(data: dict, tower: FieldTower | None = None) -> MultiPoly:
    terms = {}
    for entry in data["terms"]:
        raw = entry["coeff"]
        if isinstance(raw, str):
            c: Coeff = Rational(raw)
        else:
            if tower is None:
                raise ValueError("tower required to parse non-rational coefficients")
            c = algnum_from_json(tower, raw)
        terms[tuple(entry["exp"])] = c
    return MultiPoly(data["n"], data["ring"], terms)
