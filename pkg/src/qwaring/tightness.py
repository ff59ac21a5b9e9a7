"""Tight-decomposition feasibility verdicts and rank certificates.

A decomposition of q_n^s is *tight* when its size equals the middle
catalecticant rank T_{n,s}; tight decompositions are first caliber with
common value B_{n,s}, which pins the admissible inner products between unit
points.  Gram determinants of four points then turn those finitely many
admissible angles into exact nonvanishing certificates that exclude tight
decompositions, raising the rank lower bound to T_{n,s}+1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import UnsupportedExponent
from .exactfield import QQ, Rational
from .multipoly import MultiPoly, PRIMAL, coeff_is_zero, evaluate


class Status(Enum):
    EXISTS_KNOWN = "ExistsKnown"
    EXCLUDED_COMPLEX = "ExcludedComplex"
    EXCLUDED_REAL_ONLY = "ExcludedRealOnly"
    OPEN = "Open"


@dataclass
class TightVerdict:
    n: int
    s: int
    status: Status
    witness_name: str | None = None
    theorem_tag: str | None = None
    notes: str = ""


def _is_square_minus_2(n: int) -> int | None:
    """The odd m with n = m^2 - 2, if one exists."""
    m = math.isqrt(n + 2)
    if m * m == n + 2 and m % 2 == 1:
        return m
    return None


def tight_verdict(n: int, s: int) -> TightVerdict:
    """Feasibility of a tight decomposition of q_n^s.

    s=1 and n=2 always admit one; s=2 requires n = 3 or n = m^2-2 with m
    odd (over C), with explicit witnesses at n = 3, 7 and a known one at
    n = 23; s=3 requires n = 2 mod 3 (over C), with known existence at
    n = 8, 23 and a further real-only restriction to n = 3m^2-4; s=4 has no
    real tight decomposition and none at all for n = 3 by the angle
    certificate; s=5 is excluded over R except the open n = 24 case; s >= 6
    is excluded over R with the complex question open.
    """
    if n < 2 or s < 1:
        raise ValueError("need n >= 2 and s >= 1")
    if s == 1:
        return TightVerdict(n, s, Status.EXISTS_KNOWN,
                            notes="q_n = sum x_j^2 is itself the n-point "
                                  "tight decomposition")
    if n == 2:
        return TightVerdict(n, s, Status.EXISTS_KNOWN, witness_name=f"gen_binary({s})",
                            notes="regular (s+1)-gon")
    if s == 2:
        if n == 3:
            return TightVerdict(n, s, Status.EXISTS_KNOWN,
                                witness_name="icosahedron_q32")
        if n == 7:
            return TightVerdict(n, s, Status.EXISTS_KNOWN, witness_name="tight_q72")
        m = _is_square_minus_2(n)
        if m is None:
            return TightVerdict(n, s, Status.EXCLUDED_COMPLEX,
                                theorem_tag="s2-square-condition",
                                notes="n is neither 3 nor m^2-2 with m odd")
        if n == 23:
            return TightVerdict(n, s, Status.EXISTS_KNOWN,
                                notes="276 equiangular lines in R^23 "
                                      "(no explicit catalog witness)")
        return TightVerdict(n, s, Status.OPEN,
                            notes=f"n = {m}^2-2 passes the counting obstruction")
    if s == 3:
        if n % 3 != 2:
            return TightVerdict(n, s, Status.EXCLUDED_COMPLEX,
                                theorem_tag="s3-congruence",
                                notes="n != 2 mod 3")
        if n in (8, 23):
            return TightVerdict(n, s, Status.EXISTS_KNOWN,
                                notes="known 7-design construction "
                                      "(no explicit catalog witness)")
        m = math.isqrt((n + 4) // 3)
        if 3 * m * m - 4 != n:
            return TightVerdict(n, s, Status.EXCLUDED_REAL_ONLY,
                                theorem_tag="real-tight-classification",
                                notes="real tight needs n = 3m^2-4; complex case open")
        return TightVerdict(n, s, Status.OPEN, notes="n = 3m^2-4, existence unknown")
    if s == 4:
        if n == 3:
            return TightVerdict(n, s, Status.EXCLUDED_COMPLEX,
                                theorem_tag="gram-angle-certificate",
                                notes="excluded over C by the two-value "
                                      "Gram certificate")
        return TightVerdict(n, s, Status.EXCLUDED_REAL_ONLY,
                            theorem_tag="real-tight-classification",
                            notes="no real tight decomposition for s = 4; "
                                  "complex case open")
    if s == 5:
        if n == 24:
            return TightVerdict(n, s, Status.OPEN,
                                notes="the one surviving real case")
        return TightVerdict(n, s, Status.EXCLUDED_REAL_ONLY,
                            theorem_tag="real-tight-classification",
                            notes="complex case open")
    return TightVerdict(n, s, Status.EXCLUDED_REAL_ONLY,
                        theorem_tag="real-tight-classification",
                        notes="no real tight decompositions for s >= 6; "
                              "complex case open")


def s2_counts(m: int) -> tuple[Rational, Rational, Rational, Rational, Rational]:
    """The point-counting quantities of the s=2 exclusion argument at
    n = m^2-2, as exact rationals:

        N2- = (m-1)^3 (m+2) / 4      N2+ = (m-2)(m+1)^3 / 4
        D1  = (m+1)^3 (m-2) / 4      D2  = (m-1)^3 (m+2) / 4
        D3  = (m-1)^3 (m+2) / 8

    All five must be integers for a tight decomposition to exist.  D3 kills
    m = 2 mod 8; the remaining even m fail one of the other counts (see
    :func:`s2_integrality_obstruction`), forcing m odd.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    minus = Rational((m - 1) ** 3 * (m + 2), 4)
    plus = Rational((m - 2) * (m + 1) ** 3, 4)
    d3 = Rational((m - 1) ** 3 * (m + 2), 8)
    return minus, plus, plus, minus, d3


def is_integer(q) -> bool:
    return q.denominator == 1


def s2_integrality_obstruction(m: int) -> str | None:
    """Name of the first counting quantity of the s=2 exclusion argument
    that fails integrality at n = m^2-2, or None when all are integers.

    Besides the five :func:`s2_counts` quantities this includes the
    third-coordinate counts N3-- = (m-2)(m-1)(m^2-5)/8 and
    N3-+ = N3+- = (m-2)(m+1)^3/8; D3 alone is integral at m = 6 and the
    even-m exclusion needs the N3 family there.
    """
    n2m, n2p, d1, d2, d3 = s2_counts(m)
    checks = [
        ("N2-", n2m),
        ("N2+", n2p),
        ("N3--", Rational((m - 2) * (m - 1) * (m * m - 5), 8)),
        ("N3-+", Rational((m - 2) * (m + 1) ** 3, 8)),
        ("D1", d1),
        ("D2", d2),
        ("D3", d3),
    ]
    for name, value in checks:
        if not is_integer(value):
            return name
    return None


# ---------------------------------------------------------------------------
# admissible inner products from the kernel generators
# ---------------------------------------------------------------------------

def kernel_roots(n: int, s: int) -> list:
    """Values the product a.b may take between distinct unit points of a
    tight decomposition of q_n^s:

        s=2: +/- 1/sqrt(n+2)
        s=3: 0, +/- sqrt(3/(n+4))
        s=4: the two admissible squares (3 +/- sqrt(6(n+3)/(n+4))) / (n+6)

    (for s=4 the squares are returned; the certificate constructs the value
    tower itself).
    """
    if s == 2:
        tower, root = QQ.adjoin_sqrt(Rational(1, n + 2))
        return [root, -root]
    if s == 3:
        tower, root = QQ.adjoin_sqrt(Rational(3, n + 4))
        return [tower.from_rational(0), root, -root]
    if s == 4:
        tower, root = QQ.adjoin_sqrt(Rational(6 * (n + 3), n + 4))
        scale = Rational(1, n + 6)
        return [(root + 3) * scale, (-root + 3) * scale]
    raise UnsupportedExponent(f"kernel roots known for s in 2..4, got {s}")


# ---------------------------------------------------------------------------
# Gram determinants
# ---------------------------------------------------------------------------

#: variable order for the six off-diagonal entries of a 4-point Gram matrix
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _det4(m):
    """Cofactor-expansion determinant of a 4x4 matrix over any commutative
    coefficient arithmetic (no divisions)."""
    total = None
    for perm in itertools.permutations(range(4)):
        sign = _perm_sign(perm)
        prod = m[0][perm[0]]
        for i in range(1, 4):
            prod = prod * m[i][perm[i]]
        prod = prod * sign
        total = prod if total is None else total + prod
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def gram_det(c12, c13, c14, c23, c24, c34):
    """Determinant of the unit-diagonal symmetric 4x4 Gram matrix."""
    one = Rational(1)
    c = {
        (0, 1): c12, (0, 2): c13, (0, 3): c14,
        (1, 2): c23, (1, 3): c24, (2, 3): c34,
    }
    m = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i == j:
                m[i][j] = one
            else:
                m[i][j] = c[(min(i, j), max(i, j))]
    return _det4(m)


def gram_det_symbolic() -> MultiPoly:
    """The Gram determinant as a polynomial in the six pair variables
    c12, c13, c14, c23, c24, c34 (in that order)."""
    one = MultiPoly.constant(6, Rational(1), PRIMAL)
    m = [[None] * 4 for _ in range(4)]
    for idx, (i, j) in enumerate(PAIRS):
        var = MultiPoly.variable(idx, 6, PRIMAL)
        m[i][j] = m[j][i] = var
    for i in range(4):
        m[i][i] = one
    return _det4(m)


def _permute_poly(f: MultiPoly, perm) -> MultiPoly:
    terms = {}
    for exps, c in f.terms.items():
        new = [0] * 6
        for i, e in enumerate(exps):
            new[perm[i]] = e
        terms[tuple(new)] = c
    return MultiPoly(6, PRIMAL, terms)


@dataclass
class GramOrbitReport:
    invariance_order: int
    one_value_forms: list  # univariate polynomials in the common value
    admissible_squares: list


def gram_orbit_check() -> GramOrbitReport:
    """Symbolically confirms the symmetry and one-value structure of the
    Gram determinant:

    * exactly 24 of the 720 permutations of the six pair variables fix it
      (the permutations induced by relabeling the four points);
    * substituting +/- a for every variable yields exactly the three closed
      forms -(a-1)^3(3a+1), (a^2-1)(5a^2-1), -(a+1)^3(3a-1);
    * their roots give the admissible one-value squares {1/9, 1/5, 1}.
    """
    g = gram_det_symbolic()
    count = 0
    point_perms = set()
    for sigma in itertools.permutations(range(4)):
        induced = [0] * 6
        for idx, (i, j) in enumerate(PAIRS):
            si, sj = sigma[i], sigma[j]
            induced[idx] = PAIRS.index((min(si, sj), max(si, sj)))
        point_perms.add(tuple(induced))
    for perm in itertools.permutations(range(6)):
        if _permute_poly(g, perm) == g:
            count += 1
            if perm not in point_perms:
                raise AssertionError("unexpected symmetry of the Gram determinant")
    a = _uni_var()
    expected = [
        _uni_scale(_uni_mul(_uni_pow(_uni_sub(a, 1), 3), _uni_add(_uni_scale(a, 3), 1)), -1),
        _uni_mul(_uni_sub(_uni_mul(a, a), 1), _uni_sub(_uni_scale(_uni_mul(a, a), 5), 1)),
        _uni_scale(_uni_mul(_uni_pow(_uni_add(a, 1), 3), _uni_sub(_uni_scale(a, 3), 1)), -1),
    ]
    seen = []
    for signs in itertools.product((1, -1), repeat=6):
        vals = _gram_one_value_poly(signs)
        if vals not in seen:
            seen.append(vals)
    if sorted(map(tuple, seen)) != sorted(map(tuple, expected)):
        raise AssertionError("one-value Gram determinants differ from the closed forms")
    squares = [Rational(1, 9), Rational(1, 5), Rational(1)]
    return GramOrbitReport(invariance_order=count, one_value_forms=seen,
                           admissible_squares=squares)


# dense ascending univariate helpers over the rationals

def _uni_var():
    return [Rational(0), Rational(1)]


def _uni_add(f, g):
    if isinstance(g, int):
        g = [Rational(g)]
    n = max(len(f), len(g))
    return _uni_trim([
        (f[i] if i < len(f) else Rational(0)) + (g[i] if i < len(g) else Rational(0))
        for i in range(n)
    ])


def _uni_sub(f, g):
    if isinstance(g, int):
        g = [Rational(g)]
    return _uni_add(f, [-c for c in g])


def _uni_mul(f, g):
    out = [Rational(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _uni_trim(out)


def _uni_pow(f, e):
    out = [Rational(1)]
    for _ in range(e):
        out = _uni_mul(out, f)
    return out


def _uni_scale(f, c):
    return [x * c for x in f]


def _uni_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _gram_one_value_poly(signs) -> list:
    """Gram determinant with c_pair = sign * a, as a univariate polynomial."""
    a = _uni_var()
    one = [Rational(1)]
    m = [[None] * 4 for _ in range(4)]
    for idx, (i, j) in enumerate(PAIRS):
        entry = _uni_scale(a, signs[idx])
        m[i][j] = m[j][i] = entry
    for i in range(4):
        m[i][i] = one
    total = [Rational(0)]
    for perm in itertools.permutations(range(4)):
        sign = _perm_sign(perm)
        prod = one
        for i in range(4):
            prod = _uni_mul(prod, m[i][perm[i]])
        total = _uni_add(total, _uni_scale(prod, sign))
    return total


# ---------------------------------------------------------------------------
# the eleven two-value polynomial families
# ---------------------------------------------------------------------------

def _poly2(spec: dict) -> MultiPoly:
    return MultiPoly(2, PRIMAL, {e: Rational(c) for e, c in spec.items()})


def two_value_polys(self_check: bool = True) -> list[tuple[str, list[MultiPoly]]]:
    """The eleven polynomial families g1..g11 in the two admissible values,
    with every +/- variant expanded (duplicates removed).

    Each family's variants arise as factors of the 4-point Gram determinant
    under a substitution pattern of {+/-a, +/-b}; with ``self_check`` the
    displayed determinant factorizations are re-verified symbolically.
    """
    families: list[tuple[str, list[MultiPoly]]] = []

    def variants(builder, signs_count):
        polys = []
        for signs in itertools.product((1, -1), repeat=signs_count):
            p = builder(*signs)
            if all(p != q for q in polys):
                polys.append(p)
        return polys

    # g1 = 4a^2 +/- ab +/- a +/- b - 1
    families.append(("g1", variants(
        lambda s1, s2, s3: _poly2({(2, 0): 4, (1, 1): s1, (1, 0): s2,
                                   (0, 1): s3, (0, 0): -1}), 3)))
    # g2 = 4a^2 + b^2 - 1
    families.append(("g2", [_poly2({(2, 0): 4, (0, 2): 1, (0, 0): -1})]))
    # g3 = a^3 - a +/- 4a^2 b +/- (3a^2 + 2b^2 - 1)
    families.append(("g3", variants(
        lambda s1, s2: _poly2({(3, 0): 1, (1, 0): -1, (2, 1): 4 * s1,
                               (2, 0): 3 * s2, (0, 2): 2 * s2, (0, 0): -s2}), 2)))
    # g4 = 2a +/- b +/- 1
    families.append(("g4", variants(
        lambda s1, s2: _poly2({(1, 0): 2, (0, 1): s1, (0, 0): s2}), 2)))
    # g5 = 5ab^2 - a +/- (2a^2 + 3b^2 - 1)
    families.append(("g5", variants(
        lambda s1: _poly2({(1, 2): 5, (1, 0): -1, (2, 0): 2 * s1,
                           (0, 2): 3 * s1, (0, 0): -s1}), 1)))
    # g6 = 2a^2 + b^2 - 1 +/- 2ab
    families.append(("g6", variants(
        lambda s1: _poly2({(2, 0): 2, (0, 2): 1, (0, 0): -1, (1, 1): 2 * s1}), 1)))
    # g7 = 3b^2 - 1 +/- 2a
    families.append(("g7", variants(
        lambda s1: _poly2({(0, 2): 3, (0, 0): -1, (1, 0): 2 * s1}), 1)))
    # g8 = a^2 + b^2 - 1 +/- ab +/- a +/- b
    families.append(("g8", variants(
        lambda s1, s2, s3: _poly2({(2, 0): 1, (0, 2): 1, (0, 0): -1,
                                   (1, 1): s1, (1, 0): s2, (0, 1): s3}), 3)))
    # g9 = a^2 + b^2 - 1 +/- 3ab +/- a +/- b
    families.append(("g9", variants(
        lambda s1, s2, s3: _poly2({(2, 0): 1, (0, 2): 1, (0, 0): -1,
                                   (1, 1): 3 * s1, (1, 0): s2, (0, 1): s3}), 3)))
    # g10 = a^3 - a +/- 4ab^2 +/- (3a^2 + 2b^2 - 1)
    families.append(("g10", variants(
        lambda s1, s2: _poly2({(3, 0): 1, (1, 0): -1, (1, 2): 4 * s1,
                               (2, 0): 3 * s2, (0, 2): 2 * s2, (0, 0): -s2}), 2)))
    # g11 = a^4 + 3a^2b^2 + b^4 - 3a^2 - 3b^2 + 1 +/- (2a^3 b - 2a b^3)
    families.append(("g11", variants(
        lambda s1: _poly2({(4, 0): 1, (2, 2): 3, (0, 4): 1, (2, 0): -3,
                           (0, 2): -3, (0, 0): 1, (3, 1): 2 * s1,
                           (1, 3): -2 * s1}), 1)))
    if self_check:
        _check_gram_factorizations()
    return families


def _sym_gram(entries: dict) -> MultiPoly:
    """Gram determinant with symbolic entries: +/-a, +/-b per pair, as a
    polynomial in Q[a, b]."""
    A = MultiPoly.variable(0, 2, PRIMAL)
    B = MultiPoly.variable(1, 2, PRIMAL)
    one = MultiPoly.constant(2, Rational(1), PRIMAL)
    m = [[None] * 4 for _ in range(4)]
    for idx, (i, j) in enumerate(PAIRS):
        spec = entries[(i + 1, j + 1)]
        base = A if spec[1] == "a" else B
        m[i][j] = m[j][i] = base if spec[0] == "+" else -base
    for i in range(4):
        m[i][i] = one
    return _det4(m)


def _pp(spec: dict) -> MultiPoly:
    return _poly2(spec)


def _check_gram_factorizations() -> None:
    """Re-derives the displayed determinant identities: each pattern of
    {+/-a, +/-b} entries factors into the listed linear pieces times a
    two-value family member."""
    A = {(1, 0): 1}          # a
    B = {(0, 1): 1}          # b
    lin = lambda base, shift: _pp({**{k: v for k, v in base.items()}, (0, 0): shift})
    a_m1, a_p1 = lin(A, -1), lin(A, 1)
    b_m1, b_p1 = lin(B, -1), lin(B, 1)

    def pattern(default="a", **overrides):
        ent = {}
        for (i, j) in PAIRS:
            key = (i + 1, j + 1)
            ent[key] = overrides.get(f"c{i+1}{j+1}", "+" + default)
        return ent

    cases = [
        # one b
        (pattern(c12="+b"),
         [(-1, [a_m1, b_m1, _pp({(2, 0): 4, (1, 1): -1, (1, 0): -1, (0, 1): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-a"),
         [(1, [a_m1, a_p1, _pp({(2, 0): 4, (0, 2): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="-a"),
         [(1, [a_p1, b_m1, _pp({(2, 0): 4, (1, 1): 1, (1, 0): 1, (0, 1): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-a", c14="-a"),
         [(1, [a_m1, b_p1, _pp({(2, 0): 4, (1, 1): 1, (1, 0): -1, (0, 1): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-a", c24="-a"),
         [(-1, [a_p1, b_p1, _pp({(2, 0): 4, (1, 1): -1, (1, 0): 1, (0, 1): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-a", c23="-a"),
         [(1, [a_p1, b_m1, _pp({(2, 0): 4, (1, 1): 1, (1, 0): 1, (0, 1): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-a", c34="-a"),
         [(1, [a_m1, a_p1, _pp({(2, 0): 4, (0, 2): 1, (0, 0): -1})])]),
        # two b on a common point
        (pattern(c12="+b", c13="+b"),
         [(1, [a_m1, _pp({(3, 0): 1, (2, 1): -4, (2, 0): 3, (0, 2): 2, (1, 0): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="+b", c14="-a"),
         [(1, [a_m1, _pp({(3, 0): 1, (2, 1): 4, (2, 0): 3, (0, 2): 2, (1, 0): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="+b", c23="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (2, 1): 4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="+b", c24="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="+b", c14="-a", c23="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (2, 1): -4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="+b", c14="-a", c24="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="+b", c23="-a", c24="-a"),
         [(1, [a_m1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): 3, (0, 2): 2, (1, 0): -1, (0, 0): -1})])]),
        # opposite b pair on a common point
        (pattern(c12="+b", c13="-b"),
         [(1, [a_m1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): 3, (0, 2): 2, (1, 0): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-b", c14="-a"),
         [(1, [a_m1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): 3, (0, 2): 2, (1, 0): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="-b", c23="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="-b", c24="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (2, 1): -4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="-b", c14="-a", c23="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (1, 2): 4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="-b", c14="-a", c24="-a"),
         [(1, [a_p1, _pp({(3, 0): 1, (2, 1): 4, (2, 0): -3, (0, 2): -2, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="+b", c13="-b", c23="-a", c24="-a"),
         [(1, [a_m1, _pp({(3, 0): 1, (2, 1): 4, (2, 0): 3, (0, 2): 2, (1, 0): -1, (0, 0): -1})])]),
        # disjoint b pairs
        (pattern(c12="+b", c34="+b"),
         [(-1, [b_m1, b_m1, _pp({(1, 0): 2, (0, 1): -1, (0, 0): -1}),
                _pp({(1, 0): 2, (0, 1): 1, (0, 0): 1})])]),
        (pattern(c12="+b", c34="+b", c13="-a"),
         [(1, [_pp({(2, 0): 2, (1, 1): -2, (0, 2): 1, (0, 0): -1}),
               _pp({(2, 0): 2, (1, 1): 2, (0, 2): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="+b", c13="-a", c14="-a"),
         [(1, [b_m1, b_p1, _pp({(2, 0): 4, (0, 2): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="+b", c14="-a", c23="-a"),
         [(-1, [b_p1, b_p1, _pp({(1, 0): 2, (0, 1): -1, (0, 0): 1}),
                _pp({(1, 0): 2, (0, 1): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="-b"),
         [(1, [b_m1, b_p1, _pp({(2, 0): 4, (0, 2): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="-b", c13="-a"),
         [(1, [_pp({(2, 0): 2, (1, 1): -2, (0, 2): 1, (0, 0): -1}),
               _pp({(2, 0): 2, (1, 1): 2, (0, 2): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="-b", c13="-a", c14="-a"),
         [(-1, [b_p1, b_p1, _pp({(1, 0): 2, (0, 1): -1, (0, 0): 1}),
                _pp({(1, 0): 2, (0, 1): 1, (0, 0): -1})])]),
        (pattern(c12="+b", c34="-b", c14="-a", c23="-a"),
         [(1, [b_m1, b_p1, _pp({(2, 0): 4, (0, 2): 1, (0, 0): -1})])]),
        # three b on a common point
        (pattern(c12="+b", c13="+b", c14="+b"),
         [(-1, [a_m1, a_m1, _pp({(0, 2): 3, (1, 0): -2, (0, 0): -1})])]),
        (pattern(c12="-b", c13="+b", c14="+b"),
         [(1, [a_m1, _pp({(1, 2): 5, (2, 0): 2, (0, 2): 3, (1, 0): -1, (0, 0): -1})])]),
        (pattern(c12="+b", c13="+b", c14="+b", c23="-a"),
         [(1, [a_p1, _pp({(1, 2): 5, (2, 0): -2, (0, 2): -3, (1, 0): -1, (0, 0): 1})])]),
        (pattern(c12="-b", c13="+b", c14="+b", c23="-a"),
         [(1, [a_p1, _pp({(1, 2): 5, (2, 0): -2, (0, 2): -3, (1, 0): -1, (0, 0): 1})])]),
        # path of three b
        (pattern(c12="+b", c23="+b", c34="+b"),
         [(1, [_pp({(2, 0): 1, (1, 1): -3, (0, 2): 1, (1, 0): 1, (0, 1): 1, (0, 0): -1}),
               _pp({(2, 0): 1, (1, 1): 1, (0, 2): 1, (1, 0): -1, (0, 1): -1, (0, 0): -1})])]),
        (pattern(c12="-b", c23="+b", c34="+b"),
         [(1, [_pp({(4, 0): 1, (3, 1): -2, (2, 2): 3, (1, 3): 2, (0, 4): 1,
                    (2, 0): -3, (0, 2): -3, (0, 0): 1})])]),
        (pattern(c12="+b", c23="+b", c34="+b", c13="-a"),
         [(1, [_pp({(4, 0): 1, (3, 1): 2, (2, 2): 3, (1, 3): -2, (0, 4): 1,
                    (2, 0): -3, (0, 2): -3, (0, 0): 1})])]),
        (pattern(c12="-b", c23="+b", c34="+b", c13="-a"),
         [(1, [_pp({(2, 0): 1, (1, 1): -1, (0, 2): 1, (1, 0): -1, (0, 1): 1, (0, 0): -1}),
               _pp({(2, 0): 1, (1, 1): 3, (0, 2): 1, (1, 0): 1, (0, 1): -1, (0, 0): -1})])]),
    ]
    for entries, factored in cases:
        det = _sym_gram(entries)
        sign, factors = factored[0]
        prod = MultiPoly.constant(2, Rational(sign), PRIMAL)
        for fpoly in factors:
            prod = prod * fpoly
        if det != prod:
            raise AssertionError(
                f"Gram determinant factorization mismatch for pattern {entries}"
            )


# ---------------------------------------------------------------------------
# angle certificates
# ---------------------------------------------------------------------------

@dataclass
class AngleCertificate:
    n: int
    s: int
    admissible_products: list
    admissible_squares: list
    evaluations: dict = field(default_factory=dict)
    conclusion: str = "Inconclusive"

    @property
    def no_tight(self) -> bool:
        return self.conclusion == "NoTight"


def _certificate_values(s: int):
    """(tower, representatives of the admissible nonzero products, include
    zero flag) for n = 3."""
    if s == 3:
        # products in {0, +/- sqrt(3/7)}
        tower, root = QQ.adjoin_sqrt(Rational(3, 7))
        return tower, [root], True
    if s == 4:
        # squares (7 +/- 2 sqrt 7)/21; with u = sqrt21, b = 1/(u*a)
        t1, r7 = QQ.adjoin_sqrt(7)
        t2, r21 = t1.adjoin_sqrt(21)
        a_sq = (r7.lift_to(t2) * 2 + 7) / 21
        approx = math.sqrt((7 + 2 * math.sqrt(7)) / 21)
        tower = t2.adjoin("a", [-a_sq, 0, 1], approx)
        a = tower.gen()
        b = (r21.lift_to(tower) * a).inverse()
        return tower, [a, b], False
    raise UnsupportedExponent(f"angle certificate known for s in {{3, 4}}, got {s}")


def angle_certificate(n: int = 3, s: int = 3) -> AngleCertificate:
    """Exclude tight decompositions of q_3^s (s = 3 or 4) by exact
    nonvanishing.

    Any four points of a tight decomposition are unit points whose pairwise
    products take values with at most two distinct squares (the kernel-root
    values), and their Gram determinant vanishes.  The certificate checks
    that no admissible square is 1 or lies in the one-value set {1/9, 1/5,
    1}, and that every two-value family member is exactly nonzero at every
    admissible ordered value pair; the conclusion NoTight then raises the
    rank lower bound to T_{3,s} + 1.
    """
    if n != 3:
        raise UnsupportedExponent("the certificate is specific to n = 3")
    tower, reps, include_zero = _certificate_values(s)
    zero = tower.zero()
    values = ([zero] if include_zero else []) + [r for r in reps] + [-r for r in reps]
    squares = []
    for r in ([zero] if include_zero else []) + reps:
        sq = r * r
        if all(not coeff_is_zero(sq - t) for t in squares):
            squares.append(sq)
    cert = AngleCertificate(n=n, s=s, admissible_products=values,
                            admissible_squares=squares)
    one_value_admissible = (Rational(1, 9), Rational(1, 5), Rational(1))
    ok = True
    for sq in squares:
        if any(coeff_is_zero(sq - t) for t in one_value_admissible):
            ok = False
    # ordered pairs of representatives of the two distinct squares, all signs
    pairs = []
    rep_of = ([zero] if include_zero else []) + reps
    for x, y in itertools.permutations(rep_of, 2):
        for sx in ((1,) if coeff_is_zero(x) else (1, -1)):
            for sy in ((1,) if coeff_is_zero(y) else (1, -1)):
                pairs.append((x * sx, y * sy, f"({'+' if sx > 0 else '-'}|{'+' if sy > 0 else '-'})"))
    for name, variants in two_value_polys(self_check=False):
        for v_idx, poly in enumerate(variants):
            for x, y, label in pairs:
                val = evaluate(poly, (x, y))
                cert.evaluations[(name, v_idx, label, _pair_tag(x, y))] = val
                if coeff_is_zero(val):
                    ok = False
    cert.conclusion = "NoTight" if ok else "Inconclusive"
    return cert


def _pair_tag(x, y) -> str:
    ax, ay = x.approx(), y.approx()
    return f"({ax.real:+.4f},{ay.real:+.4f})"
