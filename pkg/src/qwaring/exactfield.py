"""Exact arithmetic over towers of algebraic extensions of the rationals.

A :class:`FieldTower` is a chain Q = K_0 < K_1 < ... < K_m where each level
adjoins a root of a monic polynomial over the previous level.  Every
generator carries one pinned numeric root, so +/- branch choices are made by
the pinned embedding and never by symbolic sign flags.

Elements (:class:`AlgNum`) are stored as recursive dense coefficient
vectors: a level-k element is a tuple of level-(k-1) elements of length
exactly deg(minpoly_k), canonically reduced; level-0 elements are rationals.
Equality and zero tests are therefore structural and exact.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Sequence

from .errors import (
    BadApproxRoot,
    DivisionByZero,
    FieldMismatch,
    ZeroDivisor,
)

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

#: concrete type of rational scalars, for isinstance checks
RAT_TYPE = type(Rational(0))
#: scalars accepted wherever a rational is expected
SCALAR_TYPES = (int, RAT_TYPE)


def _rat(x) -> Rational:
    if isinstance(x, RAT_TYPE):
        return x
    return Rational(x)


# ---------------------------------------------------------------------------
# recursive coefficient-vector arithmetic
#
# A "rep" at depth 0 is a Rational; at depth k it is a tuple of depth-(k-1)
# reps whose length equals the degree of the k-th level minimal polynomial.
# ---------------------------------------------------------------------------

def _rep_is_zero(rep, depth: int) -> bool:
    if depth == 0:
        return rep == 0
    return all(_rep_is_zero(c, depth - 1) for c in rep)


def _rep_add(levels, depth, a, b):
    if depth == 0:
        return a + b
    return tuple(_rep_add(levels, depth - 1, x, y) for x, y in zip(a, b))


def _rep_sub(levels, depth, a, b):
    if depth == 0:
        return a - b
    return tuple(_rep_sub(levels, depth - 1, x, y) for x, y in zip(a, b))


def _rep_neg(levels, depth, a):
    if depth == 0:
        return -a
    return tuple(_rep_neg(levels, depth - 1, x) for x in a)


def _rep_scale(levels, depth, a, q: Rational):
    """Multiply a rep by a rational scalar (cheap, no reduction needed)."""
    if depth == 0:
        return a * q
    return tuple(_rep_scale(levels, depth - 1, x, q) for x in a)


def _rep_mul(levels, depth, a, b):
    if depth == 0:
        return a * b
    k = depth - 1
    d = levels[k].degree
    prod = [None] * (2 * d - 1)
    for i, ai in enumerate(a):
        if _rep_is_zero(ai, k):
            continue
        for j, bj in enumerate(b):
            if _rep_is_zero(bj, k):
                continue
            term = _rep_mul(levels, k, ai, bj)
            cur = prod[i + j]
            prod[i + j] = term if cur is None else _rep_add(levels, k, cur, term)
    zero = _depth_zero(levels, k)
    coeffs = [zero if c is None else c for c in prod]
    _rep_reduce(levels, depth, coeffs)
    return tuple(coeffs)


def _rep_reduce(levels, depth, coeffs: list) -> None:
    """Reduce a coefficient list in place modulo the depth's minpoly."""
    k = depth - 1
    d = levels[k].degree
    m = levels[k].minpoly
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if _rep_is_zero(c, k):
            continue
        coeffs[i] = _depth_zero(levels, k)
        for j in range(d):
            if _rep_is_zero(m[j], k):
                continue
            coeffs[i - d + j] = _rep_sub(
                levels, k, coeffs[i - d + j], _rep_mul(levels, k, c, m[j])
            )
    del coeffs[d:]
    while len(coeffs) < d:
        coeffs.append(_depth_zero(levels, k))


_ZERO_CACHE: dict = {}


def _depth_zero(levels, depth: int):
    if depth == 0:
        return Rational(0)
    key = (levels[:depth],)
    z = _ZERO_CACHE.get(key)
    if z is None:
        z = tuple(_depth_zero(levels, depth - 1) for _ in range(levels[depth - 1].degree))
        _ZERO_CACHE[key] = z
    return z


def _rep_from_rational(levels, depth: int, q: Rational):
    if depth == 0:
        return q
    inner = _rep_from_rational(levels, depth - 1, q)
    pad = _depth_zero(levels, depth - 1)
    return tuple([inner] + [pad] * (levels[depth - 1].degree - 1))


def _rep_lift(levels, from_depth: int, to_depth: int, rep):
    for depth in range(from_depth + 1, to_depth + 1):
        pad = _depth_zero(levels, depth - 1)
        rep = tuple([rep] + [pad] * (levels[depth - 1].degree - 1))
    return rep


# -- univariate polynomial helpers over the field at a given depth ----------

def _ptrim(coeffs: list, levels, depth: int) -> list:
    while coeffs and _rep_is_zero(coeffs[-1], depth):
        coeffs.pop()
    return coeffs


def _pmul(levels, depth, f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [_depth_zero(levels, depth)] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if _rep_is_zero(fi, depth):
            continue
        for j, gj in enumerate(g):
            out[i + j] = _rep_add(levels, depth, out[i + j], _rep_mul(levels, depth, fi, gj))
    return _ptrim(out, levels, depth)


def _psub(levels, depth, f: list, g: list) -> list:
    n = max(len(f), len(g))
    zero = _depth_zero(levels, depth)
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else zero
        b = g[i] if i < len(g) else zero
        out.append(_rep_sub(levels, depth, a, b))
    return _ptrim(out, levels, depth)


def _pdivmod(levels, depth, num: list, den: list) -> tuple[list, list]:
    lead_inv = _rep_inv(levels, depth, den[-1])
    rem = list(num)
    dd = len(den) - 1
    quo = [_depth_zero(levels, depth)] * max(len(num) - dd, 0)
    while len(rem) - 1 >= dd and rem:
        shift = len(rem) - 1 - dd
        factor = _rep_mul(levels, depth, rem[-1], lead_inv)
        quo[shift] = _rep_add(levels, depth, quo[shift], factor)
        for j in range(dd + 1):
            rem[shift + j] = _rep_sub(
                levels, depth, rem[shift + j], _rep_mul(levels, depth, factor, den[j])
            )
        rem = _ptrim(rem, levels, depth)
    return _ptrim(quo, levels, depth), rem


def _rep_inv(levels, depth: int, a):
    if depth == 0:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / _rat(a)
    if _rep_is_zero(a, depth):
        raise DivisionByZero("inverse of zero")
    k = depth - 1
    lv = levels[k]
    r0 = list(lv.minpoly)
    r1 = _ptrim(list(a), levels, k)
    s0: list = []
    s1 = [_rep_from_rational(levels, k, Rational(1))]
    # invariant: s_i * a == r_i (mod minpoly)
    while len(r1) > 1:
        q, r = _pdivmod(levels, k, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(levels, k, s0, _pmul(levels, k, q, s1))
        if not r1:
            raise ZeroDivisor(
                f"gcd with minimal polynomial of level '{lv.name}' is nonconstant; "
                "the tower has a reducible minimal polynomial"
            )
    c_inv = _rep_inv(levels, k, r1[0])
    out = [_rep_mul(levels, k, c_inv, c) for c in s1]
    _rep_reduce(levels, depth, out)
    return tuple(out)


def _rep_approx(levels, depth: int, rep) -> complex:
    """Double-precision value of a rep at the pinned roots."""
    if depth == 0:
        return complex(float(rep))
    x = levels[depth - 1].approx_root
    acc = 0j
    for c in reversed(rep):
        acc = acc * x + _rep_approx(levels, depth - 1, c)
    return acc


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

class _Level:
    __slots__ = ("name", "minpoly", "degree", "approx_root", "cyclotomic_order")

    def __init__(self, name, minpoly, approx_root, cyclotomic_order=None):
        self.name = name
        self.minpoly = minpoly  # tuple of reps at the parent depth, monic
        self.degree = len(minpoly) - 1
        self.approx_root = approx_root
        self.cyclotomic_order = cyclotomic_order


class FieldTower:
    """A tower of algebraic extensions of Q with pinned numeric embeddings.

    Towers are immutable; :meth:`adjoin` returns a new tower sharing the
    existing levels, so elements of a prefix tower lift losslessly.
    """

    __slots__ = ("levels", "_signature")

    def __init__(self, levels: tuple = ()):
        self.levels = levels
        self._signature = tuple(
            (lv.name, lv.minpoly, complex(lv.approx_root)) for lv in levels
        )

    # -- structure ----------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.levels)

    def degree(self) -> int:
        """Total degree [K : Q] of the tower."""
        d = 1
        for lv in self.levels:
            d *= lv.degree
        return d

    def generator_names(self) -> list[str]:
        return [lv.name for lv in self.levels]

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and self._signature == other._signature

    def __hash__(self) -> int:
        return hash(self._signature)

    def is_prefix_of(self, other: "FieldTower") -> bool:
        return self._signature == other._signature[: self.depth]

    def __repr__(self) -> str:
        if not self.levels:
            return "FieldTower(Q)"
        return "FieldTower(Q(" + ", ".join(self.generator_names()) + "))"

    # -- element constructors ------------------------------------------------

    def zero(self) -> "AlgNum":
        return AlgNum(self, _depth_zero(self.levels, self.depth))

    def one(self) -> "AlgNum":
        return self.from_rational(1)

    def from_rational(self, q) -> "AlgNum":
        return AlgNum(self, _rep_from_rational(self.levels, self.depth, _rat(q)))

    def gen(self, index: int = -1) -> "AlgNum":
        """The generator of the given level (default: the top level)."""
        if not self.levels:
            raise FieldMismatch("the rational tower has no generators")
        index = range(self.depth)[index]
        pad = _depth_zero(self.levels, index)
        gen_rep = tuple(
            _rep_from_rational(self.levels, index, Rational(1 if i == 1 else 0))
            if i <= 1
            else pad
            for i in range(self.levels[index].degree)
        )
        return AlgNum(self, _rep_lift(self.levels, index + 1, self.depth, gen_rep))

    def gen_named(self, name: str) -> "AlgNum":
        for i, lv in enumerate(self.levels):
            if lv.name == name:
                return self.gen(i)
        raise FieldMismatch(f"no generator named {name!r} in {self!r}")

    def element(self, value) -> "AlgNum":
        """Coerce a scalar or a prefix-tower element into this tower."""
        if isinstance(value, AlgNum):
            return value.lift_to(self)
        if isinstance(value, SCALAR_TYPES):
            return self.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    # -- construction ---------------------------------------------------------

    def adjoin(self, name: str, minpoly: Sequence, approx_root: complex,
               cyclotomic_order: int | None = None) -> "FieldTower":
        """Adjoin a root of a monic polynomial over this tower.

        ``minpoly`` is the dense ascending coefficient list (constant term
        first); coefficients may be ints, rationals, or elements of this
        tower.  ``approx_root`` pins the intended embedding and must satisfy
        the polynomial to within 1e-6 at double precision.
        """
        coeffs = []
        for c in minpoly:
            e = self.element(c)
            coeffs.append(e.rep)
        if len(coeffs) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if not _rep_is_zero(
            _rep_sub(self.levels, self.depth, coeffs[-1],
                     _rep_from_rational(self.levels, self.depth, Rational(1))),
            self.depth,
        ):
            raise ValueError("minimal polynomial must be monic")
        approx_root = complex(approx_root)
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * approx_root + _rep_approx(self.levels, self.depth, c)
        if abs(acc) > 1e-6:
            raise BadApproxRoot(
                f"|minpoly({approx_root})| = {abs(acc):.3e} > 1e-6 for generator {name!r}"
            )
        level = _Level(name, tuple(coeffs), approx_root, cyclotomic_order)
        return FieldTower(self.levels + (level,))

    def adjoin_root_of_unity(self, m: int) -> "FieldTower":
        """Adjoin a primitive m-th root of unity, pinned to exp(2*pi*i/m).

        Uses the m-th cyclotomic polynomial computed by the standard divisor
        recursion over Q.  For m <= 2 the root is rational (1 or -1) and the
        tower is returned unchanged.
        """
        if m < 2:
            raise ValueError("m must be >= 2")
        if m == 2:
            return self
        coeffs = cyclotomic_coeffs(m)
        root = cmath.exp(2j * cmath.pi / m)
        return self.adjoin(f"zeta{m}", coeffs, root, cyclotomic_order=m)

    def adjoin_sqrt(self, q, name: str | None = None) -> tuple["FieldTower", "AlgNum"]:
        """Adjoin the principal square root of a positive rational, returning
        (tower, sqrt).  Square parts are split off so the minimal polynomial
        stays irreducible; a perfect square adjoins nothing."""
        q = _rat(q)
        if q <= 0:
            raise ValueError("adjoin_sqrt expects a positive rational")
        num, nsq = _split_square(int(q.numerator))
        den, dsq = _split_square(int(q.denominator))
        outer = Rational(nsq, dsq) * Rational(1, den)
        m = num * den  # squarefree-ish core: sqrt(q) = outer * sqrt(m)
        if m == 1:
            return self, self.from_rational(outer)
        tower = self.adjoin(name or f"sqrt{m}", [-m, 0, 1], math.sqrt(m))
        return tower, tower.gen() * outer


QQ = FieldTower()


def _split_square(n: int) -> tuple[int, int]:
    """n = core * sq**2 with core free of square factors; returns (core, sq)."""
    sq = 1
    core = n
    f = 2
    while f * f <= core:
        while core % (f * f) == 0:
            core //= f * f
            sq *= f
        f += 1
    return core, sq


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the m-th cyclotomic polynomial."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _int_polydiv_exact(poly, list(cyclotomic_coeffs(d)))
    return tuple(poly)


def _int_polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quo = [0] * (len(num) - dd)
    for shift in range(len(num) - dd - 1, -1, -1):
        c = num[shift + dd]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        f = c // den[-1]
        quo[shift] = f
        for j in range(dd + 1):
            num[shift + j] -= f * den[j]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quo


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class AlgNum:
    """An element of a :class:`FieldTower`, canonically reduced."""

    __slots__ = ("tower", "rep")

    def __init__(self, tower: FieldTower, rep):
        self.tower = tower
        self.rep = rep

    # -- coercion -------------------------------------------------------------

    def lift_to(self, tower: FieldTower) -> "AlgNum":
        if self.tower is tower or self.tower == tower:
            return self if self.tower is tower else AlgNum(tower, self.rep)
        if self.tower.is_prefix_of(tower):
            return AlgNum(
                tower, _rep_lift(tower.levels, self.tower.depth, tower.depth, self.rep)
            )
        raise FieldMismatch(f"{self.tower!r} is not a prefix of {tower!r}")

    def _pair(self, other):
        if isinstance(other, AlgNum):
            if self.tower is other.tower:
                return self, other
            if other.tower.is_prefix_of(self.tower):
                return self, other.lift_to(self.tower)
            if self.tower.is_prefix_of(other.tower):
                return self.lift_to(other.tower), other
            raise FieldMismatch(
                f"incompatible towers {self.tower!r} and {other.tower!r}"
            )
        if isinstance(other, SCALAR_TYPES):
            return self, self.tower.from_rational(other)
        return None

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return _rep_is_zero(self.rep, self.tower.depth)

    def is_rational(self) -> bool:
        return self.rational_value() is not None

    def rational_value(self):
        """The element as a Rational if it lies in Q, else None."""
        rep, depth = self.rep, self.tower.depth
        while depth > 0:
            if any(not _rep_is_zero(c, depth - 1) for c in rep[1:]):
                return None
            rep = rep[0]
            depth -= 1
        return rep

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.rep == b.rep

    def __hash__(self) -> int:
        q = self.rational_value()
        if q is not None:
            return hash(q)
        return hash((self.tower, self.rep))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(a.tower, _rep_add(a.tower.levels, a.tower.depth, a.rep, b.rep))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(a.tower, _rep_sub(a.tower.levels, a.tower.depth, a.rep, b.rep))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(a.tower, _rep_sub(a.tower.levels, a.tower.depth, b.rep, a.rep))

    def __neg__(self):
        return AlgNum(self.tower, _rep_neg(self.tower.levels, self.tower.depth, self.rep))

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return AlgNum(
                self.tower,
                _rep_scale(self.tower.levels, self.tower.depth, self.rep, _rat(other)),
            )
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(a.tower, _rep_mul(a.tower.levels, a.tower.depth, a.rep, b.rep))

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        return AlgNum(self.tower, _rep_inv(self.tower.levels, self.tower.depth, self.rep))

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.tower.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- display --------------------------------------------------------------

    def approx(self) -> complex:
        """Double-precision value at the pinned roots (fast, unvalidated)."""
        return _rep_approx(self.tower.levels, self.tower.depth, self.rep)

    def __repr__(self) -> str:
        q = self.rational_value()
        if q is not None:
            return f"AlgNum({q})"
        z = self.approx()
        return f"AlgNum(~{z.real:.6g}{z.imag:+.6g}j in {self.tower!r})"


# ---------------------------------------------------------------------------
# guaranteed numeric enclosure
# ---------------------------------------------------------------------------

class ComplexInterval:
    """A complex disc (center, radius) guaranteed to contain a value."""

    __slots__ = ("center", "radius")

    def __init__(self, center: complex, radius: float):
        self.center = center
        self.radius = radius

    def contains_zero(self) -> bool:
        return abs(self.center) <= self.radius

    def contains(self, z: complex) -> bool:
        return abs(self.center - complex(z)) <= self.radius

    def __repr__(self) -> str:
        c = complex(self.center)
        return f"ComplexInterval({c.real:.12g}{c.imag:+.12g}j, r={float(self.radius):.3g})"


def numeric_eval(x: AlgNum, precision_bits: int = 64) -> ComplexInterval:
    """A complex disc containing the pinned embedding of ``x``.

    Generator roots are refined from their pinned double-precision seeds by
    Newton iteration at elevated working precision; first-order error
    propagation plus rounding slack gives the enclosure radius, which shrinks
    as ``precision_bits`` grows.
    """
    import mpmath

    if x.is_zero():
        return ComplexInterval(0j, 0.0)
    levels = x.tower.levels
    wp = precision_bits + 24 * (len(levels) + 1)
    with mpmath.workprec(wp):
        eps = mpmath.mpf(2) ** (8 - wp)

        def iv_add(a, b):
            c = a[0] + b[0]
            return (c, a[1] + b[1] + eps * (abs(c) + 1))

        def iv_mul(a, b):
            c = a[0] * b[0]
            rad = abs(a[0]) * b[1] + abs(b[0]) * a[1] + a[1] * b[1]
            return (c, rad + eps * (abs(c) + 1))

        root_ivs: list = []

        def rep_iv(rep, depth):
            if depth == 0:
                return (
                    mpmath.mpc(mpmath.mpf(int(rep.numerator)) / mpmath.mpf(int(rep.denominator))),
                    mpmath.mpf(0),
                )
            acc = (mpmath.mpc(0), mpmath.mpf(0))
            xr = root_ivs[depth - 1]
            for c in reversed(rep):
                acc = iv_add(iv_mul(acc, xr), rep_iv(c, depth - 1))
            return acc

        for li, lv in enumerate(levels):
            coeff_ivs = [rep_iv(c, li) for c in lv.minpoly]
            centers = [c[0] for c in coeff_ivs]
            z = mpmath.mpc(lv.approx_root)
            for _ in range(wp):
                f = mpmath.polyval(centers[::-1], z)
                fp = mpmath.polyval(
                    [k * centers[k] for k in range(len(centers) - 1, 0, -1)], z
                )
                step = f / fp
                z = z - step
                if abs(step) <= abs(z) * eps + eps:
                    break
            fz = (mpmath.mpc(0), mpmath.mpf(0))
            dfz = (mpmath.mpc(0), mpmath.mpf(0))
            for k in range(len(coeff_ivs) - 1, -1, -1):
                fz = iv_add(iv_mul(fz, (z, mpmath.mpf(0))), coeff_ivs[k])
                if k >= 1:
                    ck = coeff_ivs[k]
                    dfz = iv_add(
                        iv_mul(dfz, (z, mpmath.mpf(0))), (k * ck[0], k * ck[1])
                    )
            denom = abs(dfz[0]) - dfz[1]
            if denom <= 0:
                rad = mpmath.mpf(1)  # degenerate; still an enclosure seed
            else:
                rad = 2 * (abs(fz[0]) + fz[1]) / denom + eps * (abs(z) + 1)
            root_ivs.append((z, rad))

        val = rep_iv(x.rep, len(levels))
        return ComplexInterval(complex(val[0]), float(val[1]))


def find_imaginary_unit(tower: FieldTower) -> AlgNum | None:
    """Locate i inside the tower, pinned to +i, or None.

    Recognizes a generator with minimal polynomial x^2 + 1 and powers of
    cyclotomic generators zeta_m with 4 | m; candidates are verified by
    exact squaring and the branch fixed by the pinned embedding.
    """
    for idx, lv in enumerate(tower.levels):
        candidate = None
        if lv.degree == 2:
            g = tower.gen(idx)
            if (g * g + 1).is_zero():
                candidate = g
        if candidate is None and lv.cyclotomic_order and lv.cyclotomic_order % 4 == 0:
            g = tower.gen(idx) ** (lv.cyclotomic_order // 4)
            if (g * g + 1).is_zero():
                candidate = g
        if candidate is not None:
            if candidate.approx().imag < 0:
                candidate = -candidate
            return candidate
    return None


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _rep_to_json(rep, depth: int):
    if depth == 0:
        return str(rep)
    return [_rep_to_json(c, depth - 1) for c in rep]


def _rep_from_json(data, levels, depth: int):
    if depth == 0:
        return Rational(data)
    d = levels[depth - 1].degree
    reps = [_rep_from_json(c, levels, depth - 1) for c in data]
    pad = _depth_zero(levels, depth - 1)
    while len(reps) < d:
        reps.append(pad)
    return tuple(reps[:d])


def tower_to_json(tower: FieldTower) -> dict:
    return {
        "levels": [
            {
                "name": lv.name,
                "minpoly": [_rep_to_json(c, i) for c in lv.minpoly],
                "approx_root": [lv.approx_root.real, lv.approx_root.imag],
            }
            for i, lv in enumerate(tower.levels)
        ]
    }


def tower_from_json(data: dict) -> FieldTower:
    tower = QQ
    for entry in data["levels"]:
        coeffs = [
            AlgNum(tower, _rep_from_json(c, tower.levels, tower.depth))
            for c in entry["minpoly"]
        ]
        re, im = entry["approx_root"]
        order = None
        name = entry["name"]
        if name.startswith("zeta") and name[4:].isdigit():
            order = int(name[4:])
        tower = tower.adjoin(name, coeffs, complex(re, im), cyclotomic_order=order)
    return tower


def algnum_to_json(x) -> object:
    if isinstance(x, SCALAR_TYPES):
        return str(_rat(x))
    return _rep_to_json(x.rep, x.tower.depth)


def algnum_from_json(tower: FieldTower, data) -> AlgNum:
    if isinstance(data, str):
        return tower.from_rational(Rational(data))
    return AlgNum(tower, _rep_from_json(data, tower.levels, tower.depth))
