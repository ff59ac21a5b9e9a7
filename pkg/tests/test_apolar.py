import math

import pytest

from qwaring.apolar import (
    ann_component_dim,
    apolar_generators,
    catalecticant,
    contraction_scalars,
    exact_rank,
    kernel_basis,
    kernel_generator,
    matrix_nullspace,
    matrix_rank,
    rank_drop_check,
    solve_square,
)
from qwaring.errors import NotUnitPoint, UnsupportedExponent
from qwaring.exactfield import QQ, Rational
from qwaring.harmonic import harmonic_basis, harmonic_dim
from qwaring.multipoly import (
    DUAL,
    MultiPoly,
    contract,
    linear_power,
    monomials,
    q_power,
)
from qwaring.waring import constants


def e1(n):
    return tuple([Rational(1)] + [Rational(0)] * (n - 1))


def test_rank_of_identity_and_zero():
    ident = [[Rational(1 if i == j else 0) for j in range(4)] for i in range(4)]
    assert matrix_rank(ident) == 4
    zero = [[Rational(0)] * 3 for _ in range(2)]
    assert matrix_rank(zero) == 0
    assert len(matrix_nullspace(zero, 3)) == 3


def test_nullspace_and_solve():
    rows = [[Rational(1), Rational(2), Rational(3)],
            [Rational(2), Rational(4), Rational(6)]]
    null = matrix_nullspace(rows, 3)
    assert len(null) == 2
    for vec in null:
        for row in rows:
            acc = sum((a * b for a, b in zip(row, vec)), Rational(0))
            assert acc == 0
    A = [[Rational(2), Rational(1)], [Rational(1), Rational(3)]]
    sol = solve_square(A, [Rational(5), Rational(10)])
    assert sol == [Rational(1), Rational(3)]


def test_catalecticant_of_x1x2():
    f = MultiPoly.monomial((1, 1), 1)
    mat = catalecticant(f, 1)
    assert mat.shape == (2, 2)
    assert exact_rank(mat) == 2


def test_catalecticant_of_linear_power_rank_one():
    for k in range(0, 4):
        mat = catalecticant(linear_power((1, 2, -1), 4), k)
        assert exact_rank(mat) <= 1


def test_catalecticant_q32_middle_rank():
    mat = catalecticant(q_power(3, 2), 2)
    assert exact_rank(mat) == 6


def test_catalecticant_q23_rank():
    mat = catalecticant(q_power(2, 3), 3)
    assert exact_rank(mat) == 4  # T_{2,3}


def test_full_rank_sweep_small():
    for n in (2, 3):
        for s in (1, 2, 3):
            d = 2 * s
            for k in range(0, d + 1):
                mat = catalecticant(q_power(n, s), k)
                dim_dual = math.comb(k + n - 1, n - 1)
                dim_primal = math.comb(d - k + n - 1, n - 1)
                assert exact_rank(mat) == min(dim_dual, dim_primal), (n, s, k)


@pytest.mark.parametrize("n,s,deg,expected", [
    (2, 2, 2, 0),
    (2, 2, 3, 2),   # dim H_{2,3}
    (3, 2, 3, 7),   # dim H_{3,3}
])
def test_ann_component_examples(n, s, deg, expected):
    assert ann_component_dim(n, s, deg) == expected


def test_ann_component_formula():
    for n in (2, 3, 4):
        for s in (1, 2):
            for k in range(1, s + 2):
                got = ann_component_dim(n, s, s + k)
                want = sum(harmonic_dim(n, s + k - 2 * j) for j in range(k))
                assert got == want, (n, s, k)


def test_apolar_generators_annihilate():
    for n, s in [(2, 1), (2, 3), (3, 1), (3, 2)]:
        gens = apolar_generators(n, s)
        assert len(gens) == harmonic_dim(n, s + 1)
        for g in gens:
            assert contract(g, q_power(n, s)).is_zero()


def test_apolar_generators_of_q2s_contain_uv_powers():
    # images of u^(s+1), v^(s+1) under the coordinate change lie in the span
    s = 3
    gens = apolar_generators(2, s)
    t4 = QQ.adjoin_root_of_unity(4)
    i_unit = t4.gen()
    for sign in (1, -1):
        p = linear_power((t4.one(), i_unit * sign), s + 1, ring=DUAL)
        assert contract(p, q_power(2, s)).is_zero()
    assert len(gens) == 2


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("s", [2, 3, 4])
def test_kernel_generator_contracts_to_zero(n, s):
    a = e1(n)
    g = kernel_generator(n, s, a)
    _, B, _ = constants(n, s)
    f1 = q_power(n, s) * (1 / B) - linear_power(a, 2 * s)
    assert contract(g, f1).is_zero()


def test_kernel_generator_shape_s2():
    g = kernel_generator(3, 2, e1(3))
    # 5 y1^2 - q_3
    assert g == MultiPoly(3, DUAL, {(2, 0, 0): Rational(4), (0, 2, 0): Rational(-1),
                                    (0, 0, 2): Rational(-1)})


def _unit_restriction(g):
    """Restrict a three-variable dual form to the unit circle (t, u, 0):
    drop y3 and substitute u^2 -> 1 - t^2, leaving a univariate in t."""
    t = MultiPoly.variable(0, 1, DUAL)
    one_minus_t2 = MultiPoly.constant(1, Rational(1), DUAL) - t * t
    out = MultiPoly.zero(1, DUAL)
    for exps, c in g.terms.items():
        k, a, b = exps
        if b:
            continue
        assert a % 2 == 0
        out = out + (t**k) * (one_minus_t2 ** (a // 2)) * c
    return out


def test_kernel_generator_restriction_roots_s3():
    # the unit restriction 7t^3 - 3t factors as 7 t (t - r)(t + r), r^2 = 3/7
    g = kernel_generator(3, 3, e1(3))
    restricted = _unit_restriction(g)
    assert restricted == MultiPoly(1, DUAL, {(3,): Rational(7), (1,): Rational(-3)})
    tower, r = QQ.adjoin_sqrt(Rational(3, 7))
    t = MultiPoly.variable(0, 1, DUAL)
    r_const = MultiPoly.constant(1, r, DUAL)
    product = (t * Rational(7)) * (t - r_const) * (t + r_const)
    assert product == restricted.scale(tower.one())


def test_kernel_generator_quartic_roots_s4():
    # unit restriction 9t^4 - 6t^2 + 3/7 = 9 (t^2 - s+)(t^2 - s-) with
    # s+- = (7 +/- 2 sqrt7)/21
    g = kernel_generator(3, 4, e1(3))
    restricted = _unit_restriction(g)
    assert restricted == MultiPoly(1, DUAL, {(4,): Rational(9), (2,): Rational(-6),
                                             (0,): Rational(3, 7)})
    tower, r7 = QQ.adjoin_sqrt(7)
    s_plus = (r7 * 2 + 7) / 21
    s_minus = (r7 * -2 + 7) / 21
    t = MultiPoly.variable(0, 1, DUAL)
    t2 = t * t
    product = (t2 - MultiPoly.constant(1, s_plus, DUAL)) \
        * (t2 - MultiPoly.constant(1, s_minus, DUAL)) * Rational(9)
    assert product == restricted.scale(tower.one())


def test_kernel_generator_requires_unit_point():
    with pytest.raises(NotUnitPoint):
        kernel_generator(3, 2, (Rational(2), Rational(0), Rational(0)))
    with pytest.raises(UnsupportedExponent):
        kernel_generator(3, 5, e1(3))


def test_rank_drop_examples():
    assert rank_drop_check(3, 2, e1(3)) == (5, 5)
    assert rank_drop_check(4, 2, e1(4)) == (9, 9)


def test_rank_no_drop_for_isotropic():
    t4 = QQ.adjoin_root_of_unity(4)
    a = (t4.one(), t4.gen(), t4.zero())
    assert rank_drop_check(3, 2, a) == (6, 6)


def test_middle_catalecticant_kernel_matches_generator():
    n, s = 3, 2
    a = e1(n)
    _, B, _ = constants(n, s)
    f1 = q_power(n, s) * (1 / B) - linear_power(a, 2 * s)
    basis = kernel_basis(catalecticant(f1, s))
    assert len(basis) == 1
    g = kernel_generator(n, s, a)
    # proportional: cross-check coefficients
    k = basis[0]
    ratio = None
    for exps, c in g.terms.items():
        other = k.terms.get(exps)
        assert other is not None
        r = c / other
        if ratio is None:
            ratio = r
        assert r == ratio
    assert set(k.terms) == set(g.terms)


def test_diagonal_form_in_harmonic_bases():
    """In the scaled harmonic bases the catalecticant of the divided power
    of q_n is the partial-identity pattern matrix."""
    from qwaring.multipoly import q_poly

    n = 3
    for s in (1, 2, 3):
        q_div = q_power(n, s, divided=True)
        hbases = {d: harmonic_basis(n, d).elements for d in range(0, 2 * s + 1)}
        for d in range(1, 2 * s + 1):
            domain = []          # (k, index), scaled dual basis T_d
            for k in range(0, d // 2 + 1):
                scale = 1 / contraction_scalars(n, s, k)
                for idx, h in enumerate(hbases.get(d - 2 * k, [])):
                    poly = (q_poly(n, DUAL) ** k) * h.retag(DUAL) * scale
                    domain.append(((k, d - 2 * k, idx), poly))
            codomain = []        # (j, index), divided basis S_{2s-d}
            e = 2 * s - d
            for j in range(0, e // 2 + 1):
                for idx, h in enumerate(hbases.get(e - 2 * j, [])):
                    poly = q_power(n, j, divided=True) * h
                    codomain.append(((j, e - 2 * j, idx), poly))
            mono = {m: i for i, m in enumerate(monomials(n, e))}
            A = [[Rational(0)] * len(codomain) for _ in mono]
            for col, (_, p) in enumerate(codomain):
                for exps, c in p.terms.items():
                    A[mono[exps]][col] = c
            for (k, hdeg, idx), t_poly in domain:
                image = contract(t_poly, q_div)
                rhs = [image.terms.get(m, Rational(0)) for m in monomials(n, e)]
                coeffs = solve_square(A, rhs)
                expect_j = s - d + k
                for (j, hdeg2, idx2), c in zip([lab for lab, _ in codomain], coeffs):
                    if expect_j >= 0 and (j, hdeg2, idx2) == (expect_j, hdeg, idx):
                        assert c == 1
                    else:
                        assert c == 0


def test_contraction_scalars():
    # (n + 2(s-1)) ... down k factors
    assert contraction_scalars(3, 2, 1) == 5
    assert contraction_scalars(3, 2, 2) == 15
    assert contraction_scalars(4, 3, 2) == 8 * 6
    assert contraction_scalars(3, 3, 0) == 1
