import json
import math

import pytest

from qwaring.apolar import catalecticant, exact_rank
from qwaring.errors import OutOfRange, UnsupportedN
from qwaring.exactfield import QQ, Rational
from qwaring.multipoly import MultiPoly, coeff_is_zero, linear_power
from qwaring.waring import (
    Decomposition,
    bombieri,
    caliber,
    catalog,
    constants,
    decomposition_from_json,
    decomposition_to_json,
    gen_binary,
    gen_q8,
    gen_stroud_q2,
    rank_bounds,
    verify,
)
from qwaring.waring import (
    firstcaliber_even,
    firstcaliber_odd,
    flavi_551_q33,
    icosahedron_q32,
    lucas_q32,
    reznick_family_q_n2,
    stroud_s3,
)


def test_verify_product_of_variables_identity():
    # x1 x2 = 1/4 (x1+x2)^2 - 1/4 (x1-x2)^2
    dec = Decomposition(
        n=2, s=1, tower=QQ, scale=Rational(1),
        terms=[
            (Rational(1, 4), (Rational(1), Rational(1))),
            (Rational(-1, 4), (Rational(1), Rational(-1))),
        ],
    )
    target = MultiPoly.monomial((1, 1), 1)
    ok, residual = verify(dec, target=target)
    assert ok and residual.is_zero()


def test_verify_detects_perturbation():
    dec = icosahedron_q32()
    ok, _ = verify(dec)
    assert ok
    lam, point = dec.terms[0]
    broken = Decomposition(
        n=dec.n, s=dec.s, tower=dec.tower, scale=dec.scale,
        terms=[(lam + 1, point)] + dec.terms[1:],
    )
    ok, residual = verify(broken)
    assert not ok and not residual.is_zero()


@pytest.mark.parametrize("n,s,T,B", [
    (3, 2, 6, Rational(5, 6)),
    (7, 2, 28, Rational(3, 4)),
    (2, 4, 5, None),
    (3, 3, 10, Rational(2 * 7, 5 * 4)),   # 2(n+4)/(5(n+1))
])
def test_constants(n, s, T, B):
    got_T, got_B, norm = constants(n, s)
    assert got_T == T
    if B is not None:
        assert got_B == B
    # norm = T * B always
    assert norm == got_B * T


def test_constants_binary():
    for s in range(1, 9):
        T, B, _ = constants(2, s)
        assert T == s + 1
        assert B == Rational(2 ** (2 * s), (s + 1) * math.comb(2 * s, s))


def test_verify_rejects_bad_dimensions():
    from qwaring.errors import DimensionMismatch

    dec = Decomposition(n=3, s=1, tower=QQ, scale=Rational(1),
                        terms=[(Rational(1), (Rational(1), Rational(0)))])
    with pytest.raises(DimensionMismatch):
        verify(dec)


def test_bombieri_rejects_mismatched_degrees():
    from qwaring.errors import DegreeMismatch
    from qwaring.multipoly import q_poly

    with pytest.raises(DegreeMismatch):
        bombieri(q_poly(2), q_poly(2) * q_poly(2))


def test_bombieri_examples():
    f = MultiPoly.monomial((2,), 1)
    assert bombieri(f, f) == 1
    from qwaring.multipoly import q_power

    assert bombieri(q_power(3, 2), q_power(3, 2)) == 5
    g = linear_power((1, 2), 2)
    h = MultiPoly.monomial((1, 1), 1)
    assert bombieri(h, g) == 2  # = h(1, 2)


def test_bombieri_reproducing_property():
    from qwaring.multipoly import evaluate, monomials
    import random

    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(1, 3)
        d = rng.randint(1, 4)
        f = MultiPoly(n, "x", {m: Rational(rng.randint(-4, 4))
                               for m in monomials(n, d)})
        a = tuple(Rational(rng.randint(-3, 3)) for _ in range(n))
        assert bombieri(f, linear_power(a, d)) == evaluate(f, a)


def test_caliber_icosahedron():
    rep = caliber(icosahedron_q32())
    assert rep.distinct_count == 1
    assert rep.is_first_caliber and rep.is_tight_valued
    assert coeff_is_zero(rep.values[0] - Rational(5, 6))


def test_caliber_lucas_two_values():
    rep = caliber(lucas_q32())
    assert rep.distinct_count == 2
    vals = {v if not hasattr(v, "rational_value") else v.rational_value()
            for v in rep.values}
    assert vals == {Rational(2, 3), Rational(3, 4)}


def test_caliber_sum_rule_across_catalog():
    # sum_j (lambda_j/c)(a_j.a_j)^s = prod_{j<s} (2j+n)/(2j+1)
    for name, dec in catalog().items():
        rep = caliber(dec)
        _, _, norm = constants(dec.n, dec.s)
        total = rep.values[0]
        for v in rep.values[1:]:
            total = total + v
        assert coeff_is_zero(total - norm), name


def test_gen_binary_small():
    dec = gen_binary(1)
    ok, _ = verify(dec)
    assert ok and dec.size == 2
    dec = gen_binary(2)
    assert all(coeff_is_zero(lam - Rational(8, 9)) for lam, _ in dec.terms)
    ok, _ = verify(dec)
    assert ok
    dec = gen_binary(5)
    ok, _ = verify(dec)
    assert ok and dec.size == 6


def test_gen_binary_middle_catalecticant_rank():
    for s in (2, 3, 4):
        dec = gen_binary(s)
        total = MultiPoly.zero(2)
        for lam, point in dec.terms:
            total = total + linear_power(point, 2 * s) * lam
        assert exact_rank(catalecticant(total, s)) == s + 1


@pytest.mark.parametrize("branch", [1, -1])
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 9, 10, 11, 12])
def test_gen_stroud_q2_verifies_both_branches(n, branch):
    dec = gen_stroud_q2(n, branch)
    ok, _ = verify(dec)
    assert ok
    T, _, _ = constants(n, 2)
    assert dec.size == (T if n == 7 else T + 1)


def test_gen_stroud_rejects_bad_n():
    with pytest.raises(UnsupportedN):
        gen_stroud_q2(8)
    with pytest.raises(UnsupportedN):
        gen_stroud_q2(2)


def test_gen_q8():
    dec = gen_q8()
    assert dec.size == 45
    ok, _ = verify(dec)
    assert ok
    rep = caliber(dec)
    assert rep.distinct_count > 1


def test_family_ranges_rejected():
    with pytest.raises(OutOfRange):
        reznick_family_q_n2(2)
    with pytest.raises(OutOfRange):
        stroud_s3(8)
    with pytest.raises(OutOfRange):
        firstcaliber_odd(4)
    with pytest.raises(OutOfRange):
        firstcaliber_even(5)


def test_firstcaliber_branches_verify():
    for branch in (1, -1):
        ok, _ = verify(firstcaliber_odd(5, branch))
        assert ok
        ok, _ = verify(firstcaliber_even(6, branch))
        assert ok


def test_firstcaliber_odd_common_value():
    dec = firstcaliber_odd(5)
    rep = caliber(dec)
    assert rep.distinct_count == 1
    # |a|^4 = (n+2)/(3(n-1)) = 7/12 at n = 5
    assert coeff_is_zero(rep.values[0] - Rational(7, 12))


def test_flavi_551_both_root_assignments():
    for swap in (False, True):
        ok, _ = verify(flavi_551_q33(swap_roots=swap))
        assert ok


def test_catalog_all_verify_and_named():
    entries = catalog()
    expected_names = {
        "lucas_q32", "liouville_q42", "icosahedron_q32", "tight_q72",
        "kempner_q43", "reznick_q33", "reznick_q34", "flavi_2441_q33",
        "flavi_551_q33", "flavi_2333_q33", "flavi_5551_q34",
    }
    assert expected_names <= set(entries)
    for name, dec in entries.items():
        assert dec.name == name
        for lam, _ in dec.terms:
            assert not coeff_is_zero(lam), name


def test_flavi_2333_symmetric_functions():
    # the three adjoined heights satisfy e1 = 3 and e3 = -2
    from qwaring.waring import flavi_2333_q33

    dec = flavi_2333_q33()
    heights = [point[2] for _, point in dec.terms[2::3]]
    a1, a2, a3 = heights[0], heights[1], heights[2]
    assert (a1 + a2 + a3 - 3).is_zero()
    assert (a1 * a2 * a3 + 2).is_zero()
    # each is a root of z^3 - 3z^2 - 3z + 2
    for a in (a1, a2, a3):
        assert (a**3 - a * a * 3 - a * 3 + 2).is_zero()


def test_rank_bounds_table():
    assert rank_bounds(2, 5).__dict__ == {"lower": 6, "upper": 6, "exact": True}
    assert rank_bounds(3, 4).__dict__ == {"lower": 16, "upper": 16, "exact": True}
    assert rank_bounds(8, 2).__dict__ == {"lower": 37, "upper": 45, "exact": False}
    assert rank_bounds(3, 2).__dict__ == {"lower": 6, "upper": 6, "exact": True}
    assert rank_bounds(7, 2).__dict__ == {"lower": 28, "upper": 28, "exact": True}
    assert rank_bounds(23, 2).__dict__ == {"lower": 276, "upper": 276, "exact": True}
    assert rank_bounds(5, 2).__dict__ == {"lower": 16, "upper": 16, "exact": True}
    assert rank_bounds(3, 3).__dict__ == {"lower": 11, "upper": 11, "exact": True}
    rb = rank_bounds(47, 2)
    assert (rb.lower, rb.upper, rb.exact) == (1128, 1129, False)
    rb = rank_bounds(5, 4)
    assert rb.upper is None and not rb.exact


def test_decomposition_json_round_trip_whole_catalog():
    for name, dec in catalog().items():
        blob = json.dumps(decomposition_to_json(dec))
        again = decomposition_from_json(json.loads(blob))
        assert again.n == dec.n and again.s == dec.s and again.size == dec.size
        ok, residual = verify(again)
        assert ok and residual.is_zero(), name


def test_catalog_towers_satisfy_their_minpolys():
    from qwaring.exactfield import AlgNum

    for name, dec in catalog().items():
        tower = dec.tower
        for idx, level in enumerate(tower.levels):
            gen = tower.gen(idx)
            acc = tower.zero()
            for coeff_rep in reversed(level.minpoly):
                base = QQ if idx == 0 else None
                c = AlgNum(
                    _prefix(tower, idx), coeff_rep
                ).lift_to(tower)
                acc = acc * gen + c
            assert acc.is_zero(), (name, level.name)


def _prefix(tower, depth):
    from qwaring.exactfield import FieldTower

    return FieldTower(tower.levels[:depth])
