import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwaring.errors import BadApproxRoot, DivisionByZero, FieldMismatch, ZeroDivisor
from qwaring.exactfield import (
    QQ,
    Rational,
    algnum_from_json,
    algnum_to_json,
    cyclotomic_coeffs,
    find_imaginary_unit,
    numeric_eval,
    tower_from_json,
    tower_to_json,
)

PHI = (1 + 5 ** 0.5) / 2


@pytest.fixture(scope="module")
def phi_tower():
    return QQ.adjoin("phi", [-1, -1, 1], PHI)


@pytest.fixture(scope="module")
def quartic_tower():
    # Q(r)(t) with r^2 - (3/2) r + 1 = 0 and t^4 = r
    root = complex(0.75, 0.6614378277661477)
    base = QQ.adjoin("r", [1, Rational(-3, 2), 1], root)
    return base.adjoin("t", [-base.gen(), 0, 0, 0, 1], root ** 0.25)


def test_sqrt2_defining_relation():
    tower, s2 = QQ.adjoin_sqrt(2)
    assert (s2 * s2 - 2).is_zero()


def test_phi_defining_relation(phi_tower):
    phi = phi_tower.gen()
    assert (phi * phi - phi - 1).is_zero()
    assert not (phi - 1).is_zero()


def test_inverse_of_zero_raises(phi_tower):
    with pytest.raises(DivisionByZero):
        phi_tower.zero().inverse()


def test_reducible_minpoly_trips_zero_divisor():
    bad = QQ.adjoin("r", [-4, 0, 1], 2.0)  # x^2 - 4 = (x-2)(x+2)
    with pytest.raises(ZeroDivisor):
        (bad.gen() - 2).inverse()


def test_bad_approx_root_rejected():
    with pytest.raises(BadApproxRoot):
        QQ.adjoin("r", [-5, 0, 1], 1.0)


def test_minpoly_degree_and_monic_validation():
    with pytest.raises(ValueError):
        QQ.adjoin("r", [-5, 1], 5.0)
    with pytest.raises(ValueError):
        QQ.adjoin("r", [-5, 0, 2], (2.5) ** 0.5)


def test_adjoin_sqrt_splits_square_part():
    tower, v = QQ.adjoin_sqrt(Rational(8, 9))
    # sqrt(8/9) = (2/3) sqrt2
    s2 = tower.gen()
    assert v == s2 * Rational(2, 3)
    tower2, w = QQ.adjoin_sqrt(Rational(9, 4))
    assert tower2.depth == 0 and w == Rational(3, 2)


@pytest.mark.parametrize("m,expected", [
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (10, (1, -1, 1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomials(m, expected):
    assert cyclotomic_coeffs(m) == expected


@pytest.mark.parametrize("m", [4, 6, 10])
def test_roots_of_unity(m):
    tower = QQ.adjoin_root_of_unity(m)
    z = tower.gen()
    assert (z**m - 1).is_zero()
    for d in range(1, m):
        if m % d == 0:
            assert not (z**d - 1).is_zero()
    if m % 2 == 0:
        assert (z ** (m // 2) + 1).is_zero()


def test_generator_satisfies_minpoly_in_catalog_towers(quartic_tower):
    r = quartic_tower.gen(0)
    t = quartic_tower.gen(1)
    assert (r * r - r * Rational(3, 2) + 1).is_zero()
    assert (t**4 - r).is_zero()


def test_prefix_lifting_round_trip(quartic_tower):
    base_val = Rational(22, 7)
    lifted = quartic_tower.from_rational(base_val)
    assert lifted.rational_value() == base_val
    r_low = QQ.adjoin("r", [1, Rational(-3, 2), 1], complex(0.75, 0.6614378277661477)).gen()
    r_high = r_low.lift_to(quartic_tower)
    assert r_high == quartic_tower.gen(0)
    with pytest.raises(FieldMismatch):
        phi = QQ.adjoin("phi", [-1, -1, 1], PHI).gen()
        _ = phi + quartic_tower.gen()


rationals = st.builds(
    Rational,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=12),
)


def _element(tower, coeffs):
    gen = tower.gen()
    acc = tower.zero()
    for c in reversed(coeffs):
        acc = acc * gen + c
    return acc


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=2, max_size=2),
       st.lists(rationals, min_size=2, max_size=2),
       st.lists(rationals, min_size=2, max_size=2))
def test_field_axioms_in_golden_tower(ca, cb, cc):
    tower = QQ.adjoin("phi", [-1, -1, 1], PHI)
    x, y, z = (_element(tower, c) for c in (ca, cb, cc))
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()
    if not x.is_zero():
        assert x * x.inverse() == tower.one()


@settings(max_examples=25, deadline=None)
@given(st.lists(rationals, min_size=4, max_size=4),
       st.lists(rationals, min_size=4, max_size=4))
def test_field_axioms_in_quartic_tower(ca, cb):
    root = complex(0.75, 0.6614378277661477)
    base = QQ.adjoin("r", [1, Rational(-3, 2), 1], root)
    tower = base.adjoin("t", [-base.gen(), 0, 0, 0, 1], root ** 0.25)
    x, y = _element(tower, ca), _element(tower, cb)
    assert x * y == y * x
    if not x.is_zero():
        assert (x.inverse() * x - 1).is_zero()
    assert numeric_eval(x - x, 64).contains_zero()


def test_numeric_eval_phi(phi_tower):
    iv = numeric_eval(phi_tower.gen(), 64)
    assert iv.contains(1.6180339887498949)
    assert iv.radius < 1e-15
    iv_hi = numeric_eval(phi_tower.gen(), 192)
    assert iv_hi.radius < iv.radius


def test_numeric_eval_zero_is_exact(phi_tower):
    phi = phi_tower.gen()
    z = phi * phi - phi - 1
    iv = numeric_eval(z, 64)
    assert iv.contains_zero() and iv.radius == 0


def test_numeric_eval_tau4():
    tower = QQ.adjoin_root_of_unity(4)
    iv = numeric_eval(tower.gen(), 64)
    assert iv.contains(complex(0, 1))


def test_find_imaginary_unit():
    assert find_imaginary_unit(QQ) is None
    t4 = QQ.adjoin_root_of_unity(4)
    i4 = find_imaginary_unit(t4)
    assert (i4 * i4 + 1).is_zero() and i4.approx().imag > 0
    t8 = QQ.adjoin_root_of_unity(8)
    i8 = find_imaginary_unit(t8)
    assert (i8 * i8 + 1).is_zero() and i8.approx().imag > 0


def test_power_and_division(quartic_tower):
    t = quartic_tower.gen()
    assert t**0 == quartic_tower.one()
    assert t**-3 == (t**3).inverse()
    assert (t / t) == quartic_tower.one()
    assert 1 / t == t.inverse()


def test_tower_json_round_trip(quartic_tower):
    data = tower_to_json(quartic_tower)
    again = tower_from_json(json.loads(json.dumps(data)))
    assert again == quartic_tower
    x = quartic_tower.gen() + quartic_tower.gen(0) * Rational(5, 3) - 7
    packed = algnum_to_json(x)
    back = algnum_from_json(again, json.loads(json.dumps(packed)))
    assert back == x.lift_to(again)


def test_rational_value_detection(phi_tower):
    assert phi_tower.from_rational(Rational(2, 3)).rational_value() == Rational(2, 3)
    assert phi_tower.gen().rational_value() is None
