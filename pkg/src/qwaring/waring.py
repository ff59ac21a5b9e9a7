"""Waring decompositions of q_n^s: data model, exact verification, caliber
analysis, closed-form constants, generated families, and the fixed catalog.

A :class:`Decomposition` stores the claimed identity

    c * q_n^s  =  sum_j lambda_j (a_j . x)^(2s)

in coefficient form (scale c, term coefficients lambda_j, points a_j), so no
2s-th roots ever need to be extracted; everything stays inside the declared
field tower.  ``verify`` expands both sides exactly and reports the residual.

Sign conventions for the catalog: a summand carrying k independent +/- signs
expands over all 2^(k-1) sign vectors with the first sign fixed positive
(even powers make the global sign immaterial), and cyclic indices wrap as
x_{n+j} = x_j.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    OutOfRange,
    UnsupportedN,
)
from .exactfield import (
    QQ,
    AlgNum,
    FieldTower,
    Rational,
    algnum_from_json,
    algnum_to_json,
    find_imaginary_unit,
    tower_from_json,
    tower_to_json,
)
from .multipoly import (
    MultiPoly,
    coeff_is_zero,
    dot,
    linear_power,
    multinomial,
    q_power,
)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def constants(n: int, s: int) -> tuple[int, Rational, Rational]:
    """(T, B, norm) for q_n^s:

    T = binom(s+n-1, s), the middle-catalecticant size;
    norm = prod_{j<s} (2j+n)/(2j+1), the self-pairing of q_n^s under the
    apolarity-compatible product; B = norm / T, the common caliber value of
    tight decompositions.
    """
    if n < 1 or s < 1:
        raise ValueError("need n, s >= 1")
    T = math.comb(s + n - 1, s)
    norm = Rational(1)
    for j in range(s):
        norm *= Rational(2 * j + n, 2 * j + 1)
    return T, norm / T, norm


def bombieri(f: MultiPoly, g: MultiPoly):
    """The symmetric bilinear product with <f, (a.x)^d> = f(a).

    With f = sum_alpha (|alpha|!/alpha!) c_alpha(f) x^alpha this is
    sum_alpha (|alpha|!/alpha!) c_alpha(f) c_alpha(g), i.e. in terms of plain
    monomial coefficients: sum_alpha (alpha!/|alpha|!) [x^alpha]f [x^alpha]g.
    """
    if f.n_vars != g.n_vars or f.ring != g.ring:
        raise DegreeMismatch("operands must live in the same ring")
    if not (f.is_homogeneous() and g.is_homogeneous()):
        raise DegreeMismatch("operands must be homogeneous")
    if not f.is_zero() and not g.is_zero() and f.degree() != g.degree():
        raise DegreeMismatch("operands must have equal degree")
    total = Rational(0)
    for exps, cf in f.terms.items():
        cg = g.terms.get(exps)
        if cg is None:
            continue
        total = total + cf * cg * Rational(1, multinomial(sum(exps), exps))
    return total


# ---------------------------------------------------------------------------
# decompositions
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    """A claimed identity c * q_n^s = sum_j lambda_j (a_j . x)^(2s)."""

    n: int
    s: int
    tower: FieldTower
    scale: object
    terms: list  # (lambda_j, point tuple)
    name: str | None = None
    paper_eq: str | None = None

    @property
    def size(self) -> int:
        return len(self.terms)


def verify(dec: Decomposition, target: MultiPoly | None = None) -> tuple[bool, MultiPoly]:
    """Expand c*target - sum_j lambda_j (a_j.x)^(2s) exactly.

    ``target`` defaults to q_n^s.  Returns (ok, residual); ok iff the
    residual is the zero polynomial.
    """
    if target is None:
        target = q_power(dec.n, dec.s)
    if target.n_vars != dec.n:
        raise DimensionMismatch("target variable count != decomposition n")
    residual = target * dec.scale
    for lam, point in dec.terms:
        if len(point) != dec.n:
            raise DimensionMismatch("point length != decomposition n")
        residual = residual - linear_power(point, 2 * dec.s) * lam
    return residual.is_zero(), residual


@dataclass
class CaliberReport:
    """Caliber data of a verified decomposition: the values
    (lambda_j/c) * (a_j.a_j)^s term by term, their exact distinct count, and
    the tight reference value B_{n,s}."""

    values: list
    distinct_count: int
    expected_tight: Rational

    @property
    def is_first_caliber(self) -> bool:
        return self.distinct_count == 1

    @property
    def is_tight_valued(self) -> bool:
        return self.is_first_caliber and coeff_is_zero(
            self.values[0] - self.expected_tight
        )


def caliber(dec: Decomposition) -> CaliberReport:
    _, B, _ = constants(dec.n, dec.s)
    c_inv = _inv_any(dec.scale)
    values = []
    for lam, point in dec.terms:
        aa = dot(point, point)
        values.append(lam * c_inv * _pow_any(aa, dec.s))
    distinct: list = []
    for v in values:
        if not any(coeff_is_zero(v - w) for w in distinct):
            distinct.append(v)
    return CaliberReport(values=values, distinct_count=len(distinct), expected_tight=B)


def _inv_any(c):
    if isinstance(c, AlgNum):
        return c.inverse()
    return 1 / Rational(c)


def _pow_any(c, e: int):
    if isinstance(c, AlgNum):
        return c**e
    return Rational(c) ** e


# ---------------------------------------------------------------------------
# point builders
# ---------------------------------------------------------------------------

def _axis(n: int, j: int, c=1):
    p = [Rational(0)] * n
    p[j % n] = c
    return tuple(p)


def _signed(base: list, slots: list) -> list:
    """All points obtained by flipping signs of the given coordinate slots,
    first slot fixed positive."""
    points = []
    for signs in itertools.product((1, -1), repeat=len(slots) - 1):
        p = list(base)
        for idx, sign in zip(slots[1:], signs):
            if sign < 0:
                p[idx] = -p[idx]
        points.append(tuple(p))
    return points


def _sum_vector(n: int, c):
    return [c] * n


# ---------------------------------------------------------------------------
# generated families
# ---------------------------------------------------------------------------

def gen_binary(s: int) -> Decomposition:
    """The regular-polygon decomposition of q_2^s: s+1 points at angles
    (j-1)pi/(s+1), realized exactly inside a cyclotomic field, with rational
    coefficients B_{2,s} = 2^(2s) / ((s+1) binom(2s, s))."""
    if s < 1:
        raise ValueError("need s >= 1")
    m = 2 * (s + 1)
    order = math.lcm(4, m)
    tower = QQ.adjoin_root_of_unity(order)
    zeta = tower.gen()
    omega = zeta ** (order // m)  # primitive 2(s+1)-th root
    i_unit = zeta ** (order // 4)
    half = Rational(1, 2)
    lam = Rational(2 ** (2 * s), (s + 1) * math.comb(2 * s, s))
    terms = []
    for j in range(s + 1):
        w = omega**j
        w_inv = omega ** (m - j) if j else tower.one()
        cos_t = (w + w_inv) * half
        sin_t = (w - w_inv) * half * i_unit.inverse()
        terms.append((lam, (cos_t, sin_t)))
    return Decomposition(
        n=2, s=s, tower=tower, scale=Rational(1), terms=terms,
        name=f"gen_binary({s})", paper_eq="regular 2(s+1)-gon",
    )


def _stroud_tower(n: int):
    """Tower containing g with g^4 = 8-n and sqrt(2), taking the rational
    shortcuts that keep every minimal polynomial irreducible:

    * 8-n a fourth power  -> g rational (n=7: g=1);
    * 8-n a square m^2    -> g = sqrt(m) (n=4: g = sqrt2 itself);
    * 8-n = 2             -> g = 2^(1/4) and sqrt2 = g^2 (n=6);
    * 8-n = -1            -> g = zeta8 and sqrt2 = g - g^3 (n=9);
    * 8-n = -4m^4         -> g = m(1+i) over Q(i) (n=12: m=1);
    * otherwise           -> adjoin x^4 - (8-n), then sqrt2.
    """
    c = 8 - n
    if c == 0:
        raise UnsupportedN("no member of this family exists for n = 8")
    root4 = round(abs(c) ** 0.25)
    if c > 0 and root4**4 == c:
        tower, sqrt2 = QQ.adjoin_sqrt(2)
        return tower, tower.from_rational(root4), sqrt2
    if c == 2:
        tower = QQ.adjoin("g", [-2, 0, 0, 0, 1], 2 ** 0.25)
        g = tower.gen()
        return tower, g, g * g
    if c == -1:
        tower = QQ.adjoin_root_of_unity(8)
        g = tower.gen()
        return tower, g, g - g**3
    if c > 0:
        root2 = math.isqrt(c)
        if root2 * root2 == c:
            tower, sqrt_m = QQ.adjoin_sqrt(root2)
            if root2 == 2:
                return tower, sqrt_m, sqrt_m
            tower2, sqrt2 = tower.adjoin_sqrt(2)
            return tower2, sqrt_m.lift_to(tower2), sqrt2
    if c < 0 and (-c) % 4 == 0:
        m4 = (-c) // 4
        mr = round(m4 ** 0.25)
        if mr**4 == m4:  # 8-n = -4 m^4 and (m(1+i))^4 = -4m^4
            tower = QQ.adjoin("i", [1, 0, 1], 1j)
            i_unit = tower.gen()
            g = (i_unit + 1) * mr
            tower2, sqrt2 = tower.adjoin_sqrt(2)
            return tower2, g.lift_to(tower2), sqrt2
    approx = complex(c) ** 0.25 if c < 0 else c ** 0.25
    tower = QQ.adjoin("g", [-c, 0, 0, 0, 1], approx)
    g = tower.gen()
    tower2, sqrt2 = tower.adjoin_sqrt(2)
    return tower2, g.lift_to(tower2), sqrt2


def gen_stroud_q2(n: int, branch: int = 1) -> Decomposition:
    """The size-(T_{n,2}+1) family for q_n^2, n >= 3 and n != 8, built over
    Q(g, sqrt2) with g^4 = 8-n:

        3 a5^4 q_n^2 = a1 (sum x)^4 + sum_k (a2 sum x + a3 x_k)^4
                       + sum_{pairs} (a4 sum x + a5 (x_j1 + x_j2))^4.

    Both +/- branches verify; the pair sum runs over unordered pairs.  The
    a1 term vanishes for n = 7, where the family collapses to the tight
    28-point decomposition.
    """
    if n < 3:
        raise UnsupportedN("need n >= 3")
    if n == 8:
        raise UnsupportedN("the n = 8 case needs its own 45-term identity")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    tower, g, sqrt2 = _stroud_tower(n)
    g2 = g * g
    g3 = g2 * g
    g4 = g2 * g2
    b2s = sqrt2 * (2 * branch)
    a1 = (g4 - 1) * 8 * (g2 + b2s) ** 4
    a2 = g2 * 2 + b2s
    a3 = -(b2s * g4) - g2 * 8
    a4 = g * 2
    a5 = -(b2s * g3) - g * 8
    scale = (a5**4) * 3
    terms = []
    if not a1.is_zero():
        terms.append((a1, tuple(_sum_vector(n, tower.one()))))
    one = tower.one()
    for k in range(n):
        p = [a2] * n
        p[k] = p[k] + a3
        terms.append((one, tuple(p)))
    for j1, j2 in itertools.combinations(range(n), 2):
        p = [a4] * n
        p[j1] = p[j1] + a5
        p[j2] = p[j2] + a5
        terms.append((one, tuple(p)))
    return Decomposition(
        n=n, s=2, tower=tower, scale=scale, terms=terms,
        name=f"gen_stroud_q2({n})", paper_eq="Stroud-type quadrature family",
    )


def gen_q8() -> Decomposition:
    """The purely rational 45-term identity for q_8^2 (1 + 8 + 8 + 28 points).

    The published closed form carries two sign typos; the coefficients used
    here are the ones forced by its own derivation (t^4 = -8/9, b/t = -3/16)
    and verify exactly:

        q_8^2 = 3/256 (sum x)^4 + 8/9 sum_j x_j^4
                - 8/9 sum_k (x_k - 3/16 sum x)^4
                + 1/3 sum_{pairs} (x_j1 + x_j2 - 3/8 sum x)^4.
    """
    n = 8
    terms = [(Rational(3, 256), tuple(_sum_vector(n, Rational(1))))]
    for j in range(n):
        terms.append((Rational(8, 9), _axis(n, j)))
    for k in range(n):
        p = _sum_vector(n, Rational(-3, 16))
        p[k] += 1
        terms.append((Rational(-8, 9), tuple(p)))
    for j1, j2 in itertools.combinations(range(n), 2):
        p = _sum_vector(n, Rational(-3, 8))
        p[j1] += 1
        p[j2] += 1
        terms.append((Rational(1, 3), tuple(p)))
    return Decomposition(
        n=8, s=2, tower=QQ, scale=Rational(1), terms=terms,
        name="gen_q8", paper_eq="size T_{8,2}+9 = 45",
    )


# ---------------------------------------------------------------------------
# fixed catalog
# ---------------------------------------------------------------------------

def lucas_q32() -> Decomposition:
    terms = [(Rational(2, 3), _axis(3, j)) for j in range(3)]
    base = [Rational(1)] * 3
    for p in _signed(base, [0, 1, 2]):
        terms.append((Rational(1, 12), p))
    return Decomposition(3, 2, QQ, Rational(1), terms,
                         name="lucas_q32", paper_eq="Lucas 1876")


def liouville_q42() -> Decomposition:
    terms = []
    for j1, j2 in itertools.combinations(range(4), 2):
        base = [Rational(0)] * 4
        base[j1] = base[j2] = Rational(1)
        for p in _signed(base, [j1, j2]):
            terms.append((Rational(1, 6), p))
    return Decomposition(4, 2, QQ, Rational(1), terms,
                         name="liouville_q42", paper_eq="Liouville/Lebesgue 1859")


def reznick_family_q_n2(n: int) -> Decomposition:
    """q_n^2 = 1/6 sum_{pairs} (x_j1 +/- x_j2)^4 + (4-n)/3 sum_j x_j^4 for
    n >= 3; the axis terms vanish at n = 4."""
    if n < 3:
        raise OutOfRange("family defined for n >= 3")
    terms = []
    for j1, j2 in itertools.combinations(range(n), 2):
        base = [Rational(0)] * n
        base[j1] = base[j2] = Rational(1)
        for p in _signed(base, [j1, j2]):
            terms.append((Rational(1, 6), p))
    if n != 4:
        for j in range(n):
            terms.append((Rational(4 - n, 3), _axis(n, j)))
    return Decomposition(n, 2, QQ, Rational(1), terms,
                         name=f"reznick_family_q_n2({n})",
                         paper_eq="Reznick notes (10.35)")


def icosahedron_q32() -> Decomposition:
    """6(phi+1) q_3^2 = sum_j (x_j +/- phi x_{j-1})^4 with phi the golden
    ratio; the six points are icosahedron vertices up to sign."""
    tower = QQ.adjoin("phi", [-1, -1, 1], (1 + 5 ** 0.5) / 2)
    phi = tower.gen()
    one = tower.one()
    terms = []
    for j in range(3):
        for sign in (1, -1):
            p = [tower.zero()] * 3
            p[j] = one
            p[(j - 1) % 3] = p[(j - 1) % 3] + phi * sign
            terms.append((one, tuple(p)))
    return Decomposition(3, 2, tower, (phi + 1) * 6, terms,
                         name="icosahedron_q32", paper_eq="Coxeter icosahedron")


def tight_q72() -> Decomposition:
    """q_7^2 = 1/12 sum_j (x_j +/- x_{j+1} +/- x_{j+3})^4, cyclic; the tight
    28-point decomposition (28 equiangular lines in R^7)."""
    terms = []
    for j in range(7):
        base = [Rational(0)] * 7
        base[j] = Rational(1)
        base[(j + 1) % 7] = Rational(1)
        base[(j + 3) % 7] = Rational(1)
        for p in _signed(base, [j, (j + 1) % 7, (j + 3) % 7]):
            terms.append((Rational(1, 12), p))
    return Decomposition(7, 2, QQ, Rational(1), terms,
                         name="tight_q72", paper_eq="28 equiangular lines")


def kempner_q43() -> Decomposition:
    terms = [(Rational(8, 15), _axis(4, j)) for j in range(4)]
    for j1, j2 in itertools.combinations(range(4), 2):
        base = [Rational(0)] * 4
        base[j1] = base[j2] = Rational(1)
        for p in _signed(base, [j1, j2]):
            terms.append((Rational(1, 15), p))
    for p in _signed([Rational(1)] * 4, [0, 1, 2, 3]):
        terms.append((Rational(1, 120), p))
    return Decomposition(4, 3, QQ, Rational(1), terms,
                         name="kempner_q43", paper_eq="Kempner 1912")


def stroud_s3(n: int) -> Decomposition:
    """q_n^3 = 2(8-n)/15 sum x_j^6 + 1/15 sum_{pairs}(x_j1 +/- x_j2)^6
    + 1/(15 2^(n-1)) sum (x_1 +/- ... +/- x_n)^6 for n >= 3, n != 8."""
    if n < 3 or n == 8:
        raise OutOfRange("family defined for n >= 3, n != 8")
    terms = []
    if n != 8:
        for j in range(n):
            terms.append((Rational(2 * (8 - n), 15), _axis(n, j)))
    for j1, j2 in itertools.combinations(range(n), 2):
        base = [Rational(0)] * n
        base[j1] = base[j2] = Rational(1)
        for p in _signed(base, [j1, j2]):
            terms.append((Rational(1, 15), p))
    for p in _signed([Rational(1)] * n, list(range(n))):
        terms.append((Rational(1, 15 * 2 ** (n - 1)), p))
    return Decomposition(n, 3, QQ, Rational(1), terms,
                         name=f"stroud_s3({n})", paper_eq="Stroud 1967 degree-7 rule")


def bhmt_q_n3(n: int) -> Decomposition:
    """60 q_n^3 = sum_{triples}(x_j1 +/- x_j2 +/- x_j3)^6
    + 2(5-n) sum_{pairs}(x_j1 +/- x_j2)^6 + 2(n^2-9n+38) sum x_j^6 for
    n >= 3; the pair terms vanish at n = 5."""
    if n < 3:
        raise OutOfRange("family defined for n >= 3")
    terms = []
    for j1, j2, j3 in itertools.combinations(range(n), 3):
        base = [Rational(0)] * n
        base[j1] = base[j2] = base[j3] = Rational(1)
        for p in _signed(base, [j1, j2, j3]):
            terms.append((Rational(1), p))
    if n != 5:
        for j1, j2 in itertools.combinations(range(n), 2):
            base = [Rational(0)] * n
            base[j1] = base[j2] = Rational(1)
            for p in _signed(base, [j1, j2]):
                terms.append((Rational(2 * (5 - n)), p))
    for j in range(n):
        terms.append((Rational(2 * (n * n - 9 * n + 38)), _axis(n, j)))
    return Decomposition(n, 3, QQ, Rational(60), terms,
                         name=f"bhmt_q_n3({n})",
                         paper_eq="Buczynski-Han-Mella-Teitler")


def reznick_q33() -> Decomposition:
    """The 11-term q_3^3 identity over Q(sqrt3)."""
    tower, r3 = QQ.adjoin_sqrt(3)
    zero, one = tower.zero(), tower.one()
    terms = [
        (tower.from_rational(Rational(14, 27)), (one, zero, zero)),
        (tower.from_rational(Rational(7, 10)), (zero, one, zero)),
        (tower.from_rational(Rational(7, 10)), (zero, zero, one)),
    ]
    lam = tower.from_rational(Rational(1, 540))
    for j in (1, 2):
        for sign in (1, -1):
            p = [zero] * 3
            p[0] = one * 2
            p[j] = r3 * sign
            terms.append((lam, tuple(p)))
    for s2, s3 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        terms.append((lam, (one, r3 * s2, r3 * s3)))
    return Decomposition(3, 3, tower, one, terms,
                         name="reznick_q33", paper_eq="Reznick notes Thm 9.28")


def reznick_q34() -> Decomposition:
    """140 q_3^4 = 3 phi^-4 sum (x_j +/- phi x_{j-1})^8
    + sum (phi x_j +/- phi^-1 x_{j-1})^8 + sum (x_1 +/- x_2 +/- x_3)^8:
    icosahedron plus dodecahedron vertices, 16 points."""
    tower = QQ.adjoin("phi", [-1, -1, 1], (1 + 5 ** 0.5) / 2)
    phi = tower.gen()
    phi_inv = phi.inverse()
    one = tower.one()
    zero = tower.zero()
    lam_ico = phi_inv**4 * 3
    terms = []
    for j in range(3):
        for sign in (1, -1):
            p = [zero] * 3
            p[j] = one
            p[(j - 1) % 3] = phi * sign
            terms.append((lam_ico, tuple(p)))
    for j in range(3):
        for sign in (1, -1):
            p = [zero] * 3
            p[j] = phi
            p[(j - 1) % 3] = phi_inv * sign
            terms.append((one, tuple(p)))
    for s2, s3 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        terms.append((one, (one, one * s2, one * s3)))
    return Decomposition(3, 4, tower, tower.from_rational(140), terms,
                         name="reznick_q34", paper_eq="Reznick notes (8.31)")


def firstcaliber_odd(n: int, branch: int = 1) -> Decomposition:
    """The size-n(n-1) first-caliber decomposition of q_n^2 for odd n >= 5,
    over Q(r)(t) with r^2 - 6/(n-1) r + 1 = 0 (a unit-circle quadratic
    irrational) and t^4 = r:

        6 q_n^2 = sum_j sum_{k even} (t x_j +/- t^-1 x_{j+k})^4
                + sum_j sum_{k odd}  (t^-1 x_j +/- t x_{j+k})^4,

    k = 1..(n-1)/2, indices cyclic.  Both complex branches verify.
    """
    if n < 5 or n % 2 == 0:
        raise OutOfRange("family defined for odd n >= 5")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    disc = (n - 4) * (n + 2)
    phi_root = complex(3, branch * math.sqrt(disc)) / (n - 1)
    base = QQ.adjoin("r", [1, Rational(-6, n - 1), 1], phi_root)
    tower = base.adjoin("t", [-base.gen(), 0, 0, 0, 1], phi_root ** 0.25)
    t = tower.gen()
    t_inv = t.inverse()
    one = tower.one()
    zero = tower.zero()
    terms = []
    for j in range(n):
        for k in range(1, (n - 1) // 2 + 1):
            c1, c2 = (t, t_inv) if k % 2 == 0 else (t_inv, t)
            for sign in (1, -1):
                p = [zero] * n
                p[j] = c1
                p[(j + k) % n] = c2 * sign
                terms.append((one, tuple(p)))
    return Decomposition(n, 2, tower, tower.from_rational(6), terms,
                         name=f"firstcaliber_odd({n})",
                         paper_eq="first-caliber family, odd n")


def firstcaliber_even(n: int, branch: int = 1) -> Decomposition:
    """The size-n(n-1) decomposition of q_n^2 for even n >= 6, over
    Q(r)(t) with r^2 - 4/(n-2) r + 1 = 0 and t^4 = r:

        6 q_n^2 = sum_j sum_{k even} (t^-1 x_j +/- t x_{j+k})^4
                + sum_j sum_{k odd}  (t x_j +/- t^-1 x_{j+k})^4
                + sum_{j<=n/2} (x_j +/- x_{j+n/2})^4,

    k = 1..(n-2)/2, indices cyclic.  Not first caliber.
    """
    if n < 6 or n % 2 == 1:
        raise OutOfRange("family defined for even n >= 6")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    disc = n * (n - 4)
    psi_root = complex(2, branch * math.sqrt(disc)) / (n - 2)
    base = QQ.adjoin("r", [1, Rational(-4, n - 2), 1], psi_root)
    tower = base.adjoin("t", [-base.gen(), 0, 0, 0, 1], psi_root ** 0.25)
    t = tower.gen()
    t_inv = t.inverse()
    one = tower.one()
    zero = tower.zero()
    terms = []
    for j in range(n):
        for k in range(1, (n - 2) // 2 + 1):
            c1, c2 = (t_inv, t) if k % 2 == 0 else (t, t_inv)
            for sign in (1, -1):
                p = [zero] * n
                p[j] = c1
                p[(j + k) % n] = c2 * sign
                terms.append((one, tuple(p)))
    for j in range(n // 2):
        for sign in (1, -1):
            p = [zero] * n
            p[j] = one
            p[j + n // 2] = one * sign
            terms.append((one, tuple(p)))
    return Decomposition(n, 2, tower, tower.from_rational(6), terms,
                         name=f"firstcaliber_even({n})",
                         paper_eq="first-caliber-style family, even n")


def _circle_point(zeta: AlgNum, order: int, k: int, z_coord, i_unit: AlgNum):
    """Point of the circle family: the linear form
    zeta^k u' + zeta^-k v' + z_coord z' with u' = x1 - i x2, v' = x1 + i x2,
    written in standard coordinates (w + w^-1, i(w^-1 - w), z)."""
    k %= order
    w = zeta**k
    w_inv = zeta ** ((order - k) % order)
    return (w + w_inv, (w_inv - w) * i_unit, z_coord)


def flavi_2441_q33() -> Decomposition:
    """The 11-term q_3^3 decomposition on squares at three heights (the
    rotated form of the classical 11-term identity), over Q(zeta8, sqrt3)."""
    base = QQ.adjoin_root_of_unity(8)
    tower, r3 = base.adjoin_sqrt(3)
    zeta = tower.gen(0)
    i_unit = find_imaginary_unit(tower)
    zero, one = tower.zero(), tower.one()
    z_high = r3.inverse() * 4      # sqrt(16/3)
    sqrt2 = zeta + zeta.inverse()
    z_low = sqrt2 * r3.inverse()   # sqrt(2/3)
    terms = [(tower.from_rational(Rational(14, 27)), (zero, zero, one))]
    for j in (1, 2):
        terms.append((tower.from_rational(Rational(7, 640)),
                      _circle_point(zeta, 8, 2 * (j - 1), zero, i_unit)))
    for j in range(1, 5):
        terms.append((tower.from_rational(Rational(1, 1280)),
                      _circle_point(zeta, 8, 2 * (j - 1), z_high, i_unit)))
    for j in range(1, 5):
        terms.append((tower.from_rational(Rational(1, 160)),
                      _circle_point(zeta, 8, 2 * j - 1, z_low, i_unit)))
    return Decomposition(3, 3, tower, one, terms,
                         name="flavi_2441_q33", paper_eq="squares 2+4+4 plus pole")


def flavi_551_q33(swap_roots: bool = False) -> Decomposition:
    """The 11-term q_3^3 decomposition on two pentagons plus a pole, over
    Q(zeta20, sqrt105, alpha) with alpha*beta = 2/3 and
    alpha^2 + beta^2 = 11/3.

    The pentagon coordinates need the imaginary unit, which Q(zeta10) lacks,
    so the cyclotomic level is zeta20 and the tenth root is zeta20^2.  Both
    root assignments verify; ``swap_roots`` exchanges alpha and beta.
    """
    base = QQ.adjoin_root_of_unity(20)
    mid, r105 = base.adjoin_sqrt(105)
    alpha_sq = (r105 + 11) / 6
    alpha_approx = math.sqrt((11 + math.sqrt(105)) / 6)
    tower = mid.adjoin("alpha", [-alpha_sq, 0, 1], alpha_approx)
    alpha = tower.gen()
    beta = alpha.inverse() * Rational(2, 3)
    if swap_roots:
        alpha, beta = beta, alpha
    zeta10 = tower.gen(0) ** 2
    i_unit = find_imaginary_unit(tower)
    zero, one = tower.zero(), tower.one()
    lam_a = (beta * beta) * Rational(1, 500) + Rational(1, 750)
    lam_b = (alpha * alpha) * Rational(1, 500) + Rational(1, 750)
    terms = [(tower.from_rational(Rational(35, 54)), (zero, zero, one))]
    for j in range(1, 6):
        terms.append((lam_a, _circle_point(zeta10, 10, 2 * (j - 1), alpha, i_unit)))
    for j in range(1, 6):
        terms.append((lam_b, _circle_point(zeta10, 10, 2 * j - 1, beta, i_unit)))
    return Decomposition(3, 3, tower, one, terms,
                         name="flavi_551_q33", paper_eq="pentagons 5+5 plus pole")


def _real_cubic_root(seed: float) -> float:
    """Newton refinement of a real root of z^3 - 3z^2 - 3z + 2."""
    z = seed
    for _ in range(80):
        f = ((z - 3) * z - 3) * z + 2
        fp = (3 * z - 6) * z - 3
        step = f / fp
        z -= step
        if abs(step) < 1e-15:
            break
    return z


def flavi_2333_q33() -> Decomposition:
    """The 11-term q_3^3 decomposition with two isotropic points and three
    triangles at the heights alpha_1, alpha_2, alpha_3, the roots of
    z^3 - 3z^2 - 3z + 2 with alpha_1+alpha_2+alpha_3 = 3 and
    alpha_1 alpha_2 alpha_3 = -2.

    Tower: Q(zeta12) (for the cube roots of unity and i), then the cubic for
    alpha_1, then the residual quadratic
    z^2 - (3-alpha_1) z - 2/alpha_1 for alpha_2; alpha_3 = 3 - alpha_1 -
    alpha_2.  Re-adjoining the full cubic would be reducible and trip the
    zero-divisor guard.
    """
    base = QQ.adjoin_root_of_unity(12)
    t1 = base.adjoin("alpha1", [2, -3, -3, 1], _real_cubic_root(-1.1))
    alpha1 = t1.gen()
    tower = t1.adjoin("alpha2", [alpha1.inverse() * -2, alpha1 - 3, 1],
                      _real_cubic_root(0.5))
    alpha1 = alpha1.lift_to(tower)
    alpha2 = tower.gen()
    alpha3 = -alpha1 - alpha2 + 3
    zeta3 = tower.gen(0) ** 4
    i_unit = find_imaginary_unit(tower)
    zero, one = tower.zero(), tower.one()
    lam_iso = tower.from_rational(Rational(-1, 20))
    terms = [
        (lam_iso, (one, -i_unit, zero)),   # u' = x1 - i x2
        (lam_iso, (one, i_unit, zero)),    # v' = x1 + i x2
    ]
    for alpha_k in (alpha1, alpha2, alpha3):
        lam = (alpha_k.inverse() * 19 - alpha_k * 11 + 36) * Rational(1, 6210)
        for j in range(3):
            terms.append((lam, _circle_point(zeta3, 3, j, alpha_k, i_unit)))
    return Decomposition(3, 3, tower, one, terms,
                         name="flavi_2333_q33",
                         paper_eq="triangles 3+3+3 plus isotropic pair")


def flavi_5551_q34() -> Decomposition:
    """The 16-term q_3^4 decomposition on three pentagons plus a pole (the
    rotated icosahedron-plus-dodecahedron identity) over Q(zeta20), with
    p = (3+sqrt5)/2 expressed inside the cyclotomic field.  As with the
    other pentagon entries, the coordinates need i, so the cyclotomic level
    is zeta20 rather than zeta10."""
    tower = QQ.adjoin_root_of_unity(20)
    zeta10 = tower.gen() ** 2
    i_unit = find_imaginary_unit(tower)
    zero, one = tower.zero(), tower.one()
    # zeta10 + zeta10^-1 = 2cos(pi/5) = (1+sqrt5)/2, so p = 1 + that value
    p = zeta10 + zeta10.inverse() + 1
    p_inv = p.inverse()
    lam_outer = (p_inv * p_inv) * Rational(1, 3500)
    lam_mid = tower.from_rational(Rational(3, 3500))
    lam_inner = (p * p) * Rational(1, 3500)
    terms = [(tower.from_rational(Rational(15, 28)), (zero, zero, one))]
    for j in range(1, 6):
        terms.append((lam_outer, _circle_point(zeta10, 10, 2 * (j - 1), p, i_unit)))
    for j in range(1, 6):
        terms.append((lam_mid, _circle_point(zeta10, 10, 2 * j - 1, one, i_unit)))
    for j in range(1, 6):
        terms.append((lam_inner, _circle_point(zeta10, 10, 2 * (j - 1), p_inv, i_unit)))
    return Decomposition(3, 4, tower, one, terms,
                         name="flavi_5551_q34", paper_eq="pentagons 5+5+5 plus pole")


#: parameter ranges for the catalog's family entries
FAMILY_RANGES = {
    "reznick_family_q_n2": range(3, 8),
    "stroud_s3": range(3, 8),
    "bhmt_q_n3": range(3, 7),
    "firstcaliber_odd": (5, 7),
    "firstcaliber_even": (6,),
}


def catalog() -> dict[str, Decomposition]:
    """All fixed catalog entries plus the family instances at their standard
    parameter ranges, keyed by name."""
    entries = [
        lucas_q32(),
        liouville_q42(),
        icosahedron_q32(),
        tight_q72(),
        kempner_q43(),
        reznick_q33(),
        reznick_q34(),
        flavi_2441_q33(),
        flavi_551_q33(),
        flavi_2333_q33(),
        flavi_5551_q34(),
    ]
    families = {
        "reznick_family_q_n2": reznick_family_q_n2,
        "stroud_s3": stroud_s3,
        "bhmt_q_n3": bhmt_q_n3,
        "firstcaliber_odd": firstcaliber_odd,
        "firstcaliber_even": firstcaliber_even,
    }
    for fname, func in families.items():
        for n in FAMILY_RANGES[fname]:
            entries.append(func(n))
    return {dec.name: dec for dec in entries}


# ---------------------------------------------------------------------------
# rank bounds
# ---------------------------------------------------------------------------

@dataclass
class RankBounds:
    lower: int
    upper: int | None
    exact: bool


def rank_bounds(n: int, s: int) -> RankBounds:
    """Best bounds on the Waring rank of q_n^s assembled from the
    middle-catalecticant bound, the tightness exclusions, and catalog
    witness sizes; ``upper`` is None when no witness is known."""
    from .tightness import Status, tight_verdict

    if n < 1 or s < 1:
        raise ValueError("need n, s >= 1")
    T, _, _ = constants(n, s)
    if n == 1:
        return RankBounds(1, 1, True)
    verdict = tight_verdict(n, s)
    lower = T + 1 if verdict.status == Status.EXCLUDED_COMPLEX else T
    upper: int | None = None
    if verdict.status == Status.EXISTS_KNOWN:
        upper = T
    elif s == 1:
        upper = n
    elif n == 2:
        upper = s + 1
    elif s == 2:
        upper = 45 if n == 8 else T + 1
    elif s == 3:
        candidates = []
        if n == 3:
            candidates.append(11)
        if n != 8:
            candidates.append(n + n * (n - 1) + 2 ** (n - 1))
        pair_terms = 0 if n == 5 else 2 * math.comb(n, 2)
        candidates.append(4 * math.comb(n, 3) + pair_terms + n)
        upper = min(candidates)
    elif s == 4 and n == 3:
        upper = 16
    exact = upper is not None and upper == lower
    return RankBounds(lower=lower, upper=upper, exact=exact)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "name": dec.name,
        "paper_eq": dec.paper_eq,
        "n": dec.n,
        "s": dec.s,
        "tower": tower_to_json(dec.tower),
        "scale": algnum_to_json(dec.scale),
        "terms": [
            {
                "coeff": algnum_to_json(lam),
                "point": [algnum_to_json(c) for c in point],
            }
            for lam, point in dec.terms
        ],
    }


def decomposition_from_json(data: dict) -> Decomposition:
    tower = tower_from_json(data["tower"])

    def parse(v):
        if isinstance(v, str):
            return Rational(v)
        return algnum_from_json(tower, v)

    terms = [
        (parse(entry["coeff"]), tuple(parse(c) for c in entry["point"]))
        for entry in data["terms"]
    ]
    return Decomposition(
        n=data["n"],
        s=data["s"],
        tower=tower,
        scale=parse(data["scale"]),
        terms=terms,
        name=data.get("name"),
        paper_eq=data.get("paper_eq"),
    )
