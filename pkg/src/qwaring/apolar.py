"""Catalecticant matrices, exact rank/nullspace, and apolar-ideal structure.

Also houses the one exact Gaussian-elimination kernel used across the
package (harmonic bases, decomposition solves, rank certificates).  Pivoting
is deterministic: first nonzero entry in column order, rows swapped, no
pivot-size heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonHomogeneous, NotUnitPoint, UnsupportedExponent
from .exactfield import AlgNum, Rational
from .multipoly import (
    DUAL,
    MultiPoly,
    coeff_inv,
    coeff_is_zero,
    contract,
    dot,
    linear_form,
    monomials,
    q_poly,
    q_power,
)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def row_echelon(rows: list[list]) -> tuple[int, list[int]]:
    """In-place forward elimination; returns (rank, pivot column indices)."""
    if not rows:
        return 0, []
    n_cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not coeff_is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = coeff_inv(rows[r][c])
        row_r = rows[r]
        for j in range(c, n_cols):
            if not coeff_is_zero(row_r[j]):
                row_r[j] = row_r[j] * inv
        for i in range(len(rows)):
            if i == r:
                continue
            factor = rows[i][c]
            if coeff_is_zero(factor):
                continue
            row_i = rows[i]
            for j in range(c, n_cols):
                if not coeff_is_zero(row_r[j]):
                    row_i[j] = row_i[j] - factor * row_r[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return r, pivots


def matrix_rank(rows: list[list]) -> int:
    work = [list(row) for row in rows]
    rank, _ = row_echelon(work)
    return rank


def matrix_nullspace(rows: list[list], n_cols: int) -> list[list]:
    """Basis of the right nullspace, one vector per free column, in column
    order; pivot coordinates are filled by back-substitution from the reduced
    echelon form."""
    work = [list(row) for row in rows]
    rank, pivots = row_echelon(work)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Rational(0)] * n_cols
        vec[fc] = Rational(1)
        for r, pc in enumerate(pivots):
            # reduced echelon: row r reads x_pc + sum coeff*x_free = 0
            entry = work[r][fc]
            if not coeff_is_zero(entry):
                vec[pc] = -entry
        basis.append(vec)
    return basis


def solve_square(rows: list[list], rhs: list) -> list:
    """Solve A x = b for invertible A (raises on singular systems)."""
    n = len(rows)
    work = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    rank, pivots = row_echelon(work)
    if rank < n or pivots != list(range(n)):
        raise ArithmeticError("singular system")
    return [work[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# catalecticants
# ---------------------------------------------------------------------------

@dataclass
class CatalecticantMatrix:
    """Matrix of Cat_{f,k}: degree-k dual forms -> degree-(d-k) forms, in
    graded-lex monomial bases; entry(r, c) is the coefficient of row-monomial
    r in the contraction of column-monomial c against f."""

    f: MultiPoly
    k: int
    rows: list
    cols: list
    entries: list

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


def catalecticant(f: MultiPoly, k: int) -> CatalecticantMatrix:
    if not f.is_homogeneous():
        raise NonHomogeneous("catalecticant needs a homogeneous form")
    d = f.degree()
    n = f.n_vars
    row_monos = monomials(n, d - k)
    col_monos = monomials(n, k)
    row_index = {m: i for i, m in enumerate(row_monos)}
    entries = [[Rational(0)] * len(col_monos) for _ in row_monos]
    for j, alpha in enumerate(col_monos):
        image = contract(MultiPoly.monomial(alpha, 1, DUAL), f)
        for exps, c in image.terms.items():
            entries[row_index[exps]][j] = c
    return CatalecticantMatrix(f=f, k=k, rows=row_monos, cols=col_monos, entries=entries)


def exact_rank(matrix) -> int:
    """Rank over the tower field; accepts a CatalecticantMatrix or raw rows."""
    if isinstance(matrix, CatalecticantMatrix):
        return matrix_rank(matrix.entries)
    return matrix_rank(matrix)


def kernel_basis(matrix: CatalecticantMatrix) -> list[MultiPoly]:
    """Nullspace of the catalecticant as degree-k dual polynomials."""
    vecs = matrix_nullspace(matrix.entries, len(matrix.cols))
    out = []
    for v in vecs:
        terms = {m: c for m, c in zip(matrix.cols, v) if not coeff_is_zero(c)}
        out.append(MultiPoly(matrix.f.n_vars, DUAL, terms))
    return out


# ---------------------------------------------------------------------------
# apolar ideal of q_n^s
# ---------------------------------------------------------------------------

def contraction_scalars(n: int, s: int, k: int) -> Rational:
    """The product (n+2(s-1))(n+2(s-2))...(n+2(s-k)) scaling repeated
    Laplacians of divided powers of q_n."""
    out = Rational(1)
    for j in range(1, k + 1):
        out *= n + 2 * (s - j)
    return out


def ann_component_dim(n: int, s: int, deg: int) -> int:
    """Nullity of the degree-``deg`` catalecticant of q_n^s (by exact
    elimination; zero for deg <= s, the harmonic direct-sum dimension above)."""
    if deg < 0:
        raise ValueError("degree must be nonnegative")
    mat = catalecticant(q_power(n, s), deg)
    return len(mat.cols) - exact_rank(mat)


def apolar_generators(n: int, s: int):
    """Degree-(s+1) harmonic generators of the apolar ideal of q_n^s, as
    dual polynomials."""
    from .harmonic import harmonic_basis

    basis = harmonic_basis(n, s + 1)
    return [h.retag(DUAL) for h in basis.elements]


def vanishing_ideal_component(points, n: int, degree: int) -> list[MultiPoly]:
    """Basis of the degree-``degree`` dual forms vanishing at every given
    point, via the exact nullspace of the evaluation matrix.

    For any Waring decomposition this component is contained in the apolar
    ideal of the decomposed form (each returned element contracts it to
    zero), which is the testable content of the apolarity lemma.
    """
    monos = monomials(n, degree)
    rows = []
    for point in points:
        tables = []
        for c in point:
            t = [Rational(1)]
            for _ in range(degree):
                t.append(t[-1] * c)
            tables.append(t)
        row = []
        for m in monos:
            v = Rational(1)
            for i, e in enumerate(m):
                if e:
                    v = v * tables[i][e]
            row.append(v)
        rows.append(row)
    vecs = matrix_nullspace(rows, len(monos))
    return [
        MultiPoly(n, DUAL, {m: c for m, c in zip(monos, v) if not coeff_is_zero(c)})
        for v in vecs
    ]


# ---------------------------------------------------------------------------
# kernel generators of the tight-decomposition certificates
# ---------------------------------------------------------------------------

def kernel_generator(n: int, s: int, a) -> MultiPoly:
    """Generator of the middle-catalecticant kernel of
    (1/B_{n,s}) q_n^s - (a.x)^(2s) for a unit point a, s in {2, 3, 4}."""
    if s not in (2, 3, 4):
        raise UnsupportedExponent(f"kernel generator known for s in 2..4, got {s}")
    aa = dot(a, a)
    if not _is_one(aa):
        raise NotUnitPoint("kernel generator needs a.a = 1 exactly")
    ay = linear_form(a, DUAL)
    qn = q_poly(n, DUAL)
    if s == 2:
        return (ay * ay) * Rational(n + 2) - qn
    if s == 3:
        return (ay**3) * Rational(n + 4) - (qn * ay) * Rational(3)
    ay2 = ay * ay
    return (
        (ay2 * ay2) * Rational(n + 6)
        - (qn * ay2) * Rational(6)
        + (qn * qn) * Rational(3, n + 4)
    )


def _is_one(value) -> bool:
    if isinstance(value, AlgNum):
        return (value - 1).is_zero()
    return value == 1


def rank_drop_check(n: int, s: int, a) -> tuple[int, int]:
    """(rank, expected rank) of the middle catalecticant of
    (1/B_{n,s}) q_n^s - (a.x)^(2s): one less than full for a unit point, full
    for an isotropic point."""
    from .multipoly import linear_power
    from .waring import constants

    aa = dot(a, a)
    isotropic = coeff_is_zero(aa)
    if not isotropic and not _is_one(aa):
        raise NotUnitPoint("rank drop check needs a.a = 1 or a.a = 0 exactly")
    T, B, _ = constants(n, s)
    f1 = q_power(n, s) * (1 / B) - linear_power(a, 2 * s)
    rank = exact_rank(catalecticant(f1, s))
    expected = T if isotropic else T - 1
    return rank, expected
