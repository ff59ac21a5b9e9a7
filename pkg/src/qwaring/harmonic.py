"""Harmonic polynomial spaces.

Dimensions, kernel-of-Laplacian bases, the direct-sum decomposition of
degree-d forms into q_n^j times harmonics, and the explicit three-variable
weight basis h_{d,k} with its ladder operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .apolar import matrix_nullspace, solve_square
from .errors import MissingGenerator, NonHomogeneous, RingMismatch
from .exactfield import AlgNum, FieldTower, Rational, find_imaginary_unit
from .multipoly import (
    DUAL,
    MultiPoly,
    coeff_is_zero,
    monomials,
    q_poly,
    substitute,
)


def harmonic_dim(n: int, d: int) -> int:
    """dim of the degree-d harmonics in n variables:
    binom(d+n-1, n-1) - binom(d+n-3, n-1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if d < 0:
        return 0
    first = math.comb(d + n - 1, n - 1)
    second = math.comb(d + n - 3, n - 1) if d >= 2 else 0
    return first - second


@dataclass
class HarmonicBasis:
    n: int
    d: int
    elements: list


def harmonic_basis(n: int, d: int, ring: str = "x") -> HarmonicBasis:
    """Deterministic basis of the kernel of the Laplacian on degree-d forms,
    computed as an exact nullspace in the graded-lex monomial basis."""
    cols = monomials(n, d)
    rows_idx = {m: i for i, m in enumerate(monomials(n, d - 2))}
    rows = [[Rational(0)] * len(cols) for _ in rows_idx]
    for j, exps in enumerate(cols):
        for i, e in enumerate(exps):
            if e < 2:
                continue
            target = list(exps)
            target[i] -= 2
            rows[rows_idx[tuple(target)]][j] = Rational(e * (e - 1))
    vecs = matrix_nullspace(rows, len(cols))
    elements = [
        MultiPoly(n, ring, {m: c for m, c in zip(cols, v) if not coeff_is_zero(c)})
        for v in vecs
    ]
    return HarmonicBasis(n=n, d=d, elements=elements)


@dataclass
class HarmonicDecomposition:
    """f = sum_j q_n^j * h_j with each h_j harmonic of degree d - 2j."""

    n: int
    d: int
    components: list  # (j, MultiPoly)

    def reconstruct(self, ring: str = "x") -> MultiPoly:
        out = MultiPoly.zero(self.n, ring)
        q = q_poly(self.n, ring)
        for j, h in self.components:
            out = out + (q**j) * h.retag(ring)
        return out


def harmonic_decompose(f: MultiPoly) -> HarmonicDecomposition:
    """Unique expansion of a homogeneous form over the bases
    {q_n^j * harmonic_basis(n, d-2j)}, by one exact linear solve."""
    if not f.is_homogeneous():
        raise NonHomogeneous("harmonic decomposition needs a homogeneous form")
    n = f.n_vars
    if f.is_zero():
        return HarmonicDecomposition(n=n, d=0, components=[])
    d = f.degree()
    basis_polys = []
    labels = []
    q = q_poly(n, f.ring)
    qj = MultiPoly.constant(n, Rational(1), f.ring)
    for j in range(d // 2 + 1):
        hb = harmonic_basis(n, d - 2 * j, ring=f.ring)
        for idx, h in enumerate(hb.elements):
            basis_polys.append(qj * h)
            labels.append((j, idx, hb))
        qj = qj * q
    mono_list = monomials(n, d)
    mono_idx = {m: i for i, m in enumerate(mono_list)}
    matrix = [[Rational(0)] * len(basis_polys) for _ in mono_list]
    for col, p in enumerate(basis_polys):
        for exps, c in p.terms.items():
            matrix[mono_idx[exps]][col] = c
    rhs = [f.terms.get(m, Rational(0)) for m in mono_list]
    coeffs = solve_square(matrix, rhs)
    per_j: dict[int, MultiPoly] = {}
    for (j, idx, hb), c in zip(labels, coeffs):
        if coeff_is_zero(c):
            continue
        cur = per_j.get(j, MultiPoly.zero(n, f.ring))
        per_j[j] = cur + hb.elements[idx] * c
    components = [(j, per_j[j]) for j in sorted(per_j)]
    return HarmonicDecomposition(n=n, d=d, components=components)


# ---------------------------------------------------------------------------
# the u, v, z coordinates for two and three variables
# ---------------------------------------------------------------------------

def _tower_with_i(f: MultiPoly, tower: FieldTower | None):
    if tower is None:
        for c in f.terms.values():
            if isinstance(c, AlgNum):
                tower = c.tower
                break
    if tower is None:
        raise MissingGenerator("a tower containing i is required")
    i_unit = find_imaginary_unit(tower)
    if i_unit is None:
        raise MissingGenerator(f"no imaginary unit found in {tower!r}")
    return tower, i_unit


def uvz_change(f: MultiPoly, direction: str,
               tower: FieldTower | None = None) -> MultiPoly:
    """Exact linear change between standard dual coordinates and the
    (u, v, z) coordinates.

    Three variables use u = (y1 + i y2)/2, v = (y1 - i y2)/2, z = y3; two
    variables use the unhalved pair u = y1 + i y2, v = y1 - i y2.  The
    Laplacian becomes d^2/dudv + d^2/dz^2 (three variables).  The tower must
    contain i; it is found in ``tower`` or in the coefficients of ``f``.
    """
    if f.ring != DUAL:
        raise RingMismatch("uvz_change operates on dual-coordinate polynomials")
    if f.n_vars not in (2, 3):
        raise ValueError("uvz coordinates exist for 2 or 3 variables")
    if direction not in ("to_uvz", "from_uvz"):
        raise ValueError("direction must be 'to_uvz' or 'from_uvz'")
    tower, i_unit = _tower_with_i(f, tower)
    n = f.n_vars
    half = Rational(1, 2)

    def var(k):
        return MultiPoly.variable(k, n, DUAL)

    u, v = var(0), var(1)
    if n == 3:
        if direction == "to_uvz":
            # y1 -> u + v, y2 -> -i(u - v), y3 -> z
            images = [u + v, (u - v) * (-i_unit), var(2)]
        else:
            # u -> (y1 + i y2)/2, v -> (y1 - i y2)/2, z -> y3
            images = [
                (var(0) + var(1) * i_unit) * half,
                (var(0) - var(1) * i_unit) * half,
                var(2),
            ]
    else:
        if direction == "to_uvz":
            # y1 -> (u + v)/2, y2 -> -i(u - v)/2
            images = [(u + v) * half, (u - v) * (-i_unit) * half]
        else:
            # u -> y1 + i y2, v -> y1 - i y2
            images = [var(0) + var(1) * i_unit, var(0) - var(1) * i_unit]
    return substitute(f, images)


def harmonic_basis3(d: int) -> HarmonicBasis:
    """The weight basis h_{d,k}, k = d..-d (descending), of the degree-d
    harmonics in three variables, written in (u, v, z) coordinates with
    rational coefficients and divided-power monomials expanded."""
    if d < 0:
        raise ValueError("need d >= 0")
    elements = [weight_vector(d, k) for k in range(d, -d - 1, -1)]
    return HarmonicBasis(n=3, d=d, elements=elements)


def weight_vector(d: int, k: int) -> MultiPoly:
    """h_{d,k} in (u, v, z) coordinates."""
    if abs(k) > d:
        raise ValueError("need -d <= k <= d")
    ak = abs(k)
    lead = Rational(1, math.comb(2 * d, k + d))
    terms = {}
    for j in range((d - ak) // 2 + 1):
        p = (ak + k) // 2 + j
        q = (ak - k) // 2 + j
        r = d - ak - 2 * j
        sign = -1 if ((ak + k) // 2 + j) % 2 else 1
        denom = math.factorial(p) * math.factorial(q) * math.factorial(r)
        terms[(p, q, r)] = lead * Rational(sign, denom)
    return MultiPoly(3, DUAL, terms)


_SL2_RULES = {
    # derivation images of (u, v, z), as (variable index, target exps, factor)
    "H": {0: [((1, 0, 0), 2)], 1: [((0, 1, 0), -2)], 2: []},
    "E": {0: [], 1: [((0, 0, 1), 1)], 2: [((1, 0, 0), -2)]},
    "F": {0: [((0, 0, 1), -1)], 1: [], 2: [((0, 1, 0), 2)]},
}


def sl2_apply(operator: str, f: MultiPoly) -> MultiPoly:
    """Apply H, E, or F (as derivations of C[u, v, z]) via the Leibniz rule:
    H(u)=2u, H(v)=-2v, H(z)=0; E(u)=0, E(v)=z, E(z)=-2u;
    F(u)=-z, F(v)=0, F(z)=2v."""
    if operator not in _SL2_RULES:
        raise ValueError("operator must be one of 'H', 'E', 'F'")
    rules = _SL2_RULES[operator]
    out = MultiPoly.zero(3, f.ring)
    for exps, c in f.terms.items():
        for i, e in enumerate(exps):
            if not e:
                continue
            for target, factor in rules[i]:
                new = list(exps)
                new[i] -= 1
                for t, te in enumerate(target):
                    new[t] += te
                out = out + MultiPoly(3, f.ring, {tuple(new): c * (e * factor)})
    return out
