import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from sralgebra.errors import FieldMismatch, InvalidParameter, ParseError, UnsupportedOperation
from sralgebra.scalars import NumberField, field_init, parse_scalar


def _no_rational_root(p):
    # p monic integer, low to high; rational roots are integer divisors of p[0]
    c0 = abs(p[0])
    cands = {d for d in range(1, c0 + 1) if c0 % d == 0} or {0}
    return all(sum(c * x**k for k, c in enumerate(p)) != 0 for d in cands for x in (d, -d))


def _no_quadratic_factor(p, bound=12):
    # monic quartic: search x^2 + a x + b dividing p with small integer a, b
    for a, b in product(range(-bound, bound + 1), repeat=2):
        if b == 0 or p[0] % b:
            continue
        rem = list(p)
        for k in range(len(rem) - 1, 1, -1):
            q = rem[k]
            rem[k] -= q
            rem[k - 1] -= q * a
            rem[k - 2] -= q * b
        if rem[0] == 0 and rem[1] == 0:
            return False
    return True


def test_minpoly_small_cases():
    assert NumberField(3).minpoly == (-3, 0, 1)
    q = field_init("rational")
    assert q.degree == 1 and q.minpoly == (-1, 1)


def test_minpoly_n5_brute_force_oracle():
    # symbolic squaring: c = 2cos(pi/10), c^2 = 2 + 2cos(pi/5), 2cos(pi/5) = (1+sqrt5)/2
    # => (c^2 - 2 - 1/2)^2 = 5/4  => c^4 - 5c^2 + 5 = 0
    expected = (5, 0, -5, 0, 1)
    assert _no_rational_root(expected) and _no_quadratic_factor(expected)
    assert NumberField(5).minpoly == expected


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 9])
def test_minpoly_invariants(n):
    K = NumberField(n)
    phi = sum(1 for k in range(1, 4 * n + 1) if math.gcd(k, 4 * n) == 1)
    assert K.degree == phi // 2 == len(K.minpoly) - 1
    assert K.minpoly[-1] == 1
    c = 2 * math.cos(math.pi / (2 * n))
    assert abs(sum(a * c**k for k, a in enumerate(K.minpoly))) < 1e-12 * 10**K.degree


def test_invalid_n():
    with pytest.raises(InvalidParameter):
        NumberField(2)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cheb_cos(n):
    K = NumberField(n)
    assert K.cheb_cos(0) == 2
    assert K.cheb_cos(2 * n) == -2
    for k in range(4 * n):
        assert abs(float(K.cheb_cos(k)) - 2 * math.cos(k * math.pi / (2 * n))) < 1e-9


def test_cheb_cos_examples():
    assert NumberField(3).cheb_cos(3) == 0
    with pytest.raises(UnsupportedOperation):
        field_init().cheb_cos(1)


def test_arithmetic_examples():
    K = NumberField(3)
    c = K.gen
    assert c * c == 3
    assert K.scalar(2).inv() == Fraction(1, 2)
    assert c.inv() == c / 3
    assert c * (c / 3) == 1
    with pytest.raises(ZeroDivisionError):
        K.zero.inv()
    with pytest.raises(FieldMismatch):
        c + NumberField(5).gen


def scalars(n):
    K = NumberField(n)
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
    return st.lists(coeff, min_size=K.degree, max_size=K.degree).map(K.from_coeffs)


@settings(max_examples=200, deadline=None)
@given(scalars(7), scalars(7), scalars(7))
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + (-a)).coeffs == (0,) * a.field.degree
    if a:
        assert a * a.inv() == 1
    assert abs(float(a * b + c) - (float(a) * float(b) + float(c))) < 1e-9 * (1 + abs(float(a * b + c)))


def test_inverse_on_many_samples():
    import random

    rng = random.Random(5)
    for n in (3, 5, 7):
        K = NumberField(n)
        for _ in range(1000 // 3 + 1):
            a = K.from_coeffs([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(K.degree)])
            if a:
                assert a * a.inv() == 1


@settings(max_examples=100, deadline=None)
@given(scalars(5))
def test_scalar_round_trip(a):
    assert parse_scalar(str(a), a.field) == a


def test_scalar_syntax():
    K = NumberField(3)
    x = parse_scalar("3/2 + 1/2*c", K)
    assert x == Fraction(3, 2) + K.gen / 2
    assert str(x) == "3/2 + 1/2*c"
    with pytest.raises(ParseError):
        parse_scalar("3/", K)
    with pytest.raises(ParseError):
        parse_scalar("c", field_init())
