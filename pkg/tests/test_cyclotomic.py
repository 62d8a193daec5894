from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germinv.cyclotomic import (
    CyclotomicNumber,
    coerce,
    format_number,
    nth_root,
    roots_of_unity,
    set_max_conductor,
    sqrt_integer,
)
from germinv.errors import ExtensionUnsupported
from germinv.expr import parse_poly

mpmath.mp.dps = 40


def embed(x: CyclotomicNumber) -> mpmath.mpc:
    """Complex value under zeta_n -> exp(2 pi i / n); the independent oracle."""
    z = mpmath.exp(2j * mpmath.pi / x.n)
    return sum((mpmath.mpf(c) * z**k for k, c in enumerate(x.num)), mpmath.mpc(0)) / x.den


def close(a, b) -> bool:
    return abs(a - b) < mpmath.mpf(10) ** -30


small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def scalars(draw, conductors=(3, 4, 5, 8, 12)):
    n = draw(st.sampled_from(conductors))
    x = CyclotomicNumber.from_rational(0, n)
    for _ in range(draw(st.integers(1, 3))):
        x = x + CyclotomicNumber.zeta(n, draw(st.integers(0, n - 1))) * draw(small)
    return x


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(scalars(), scalars())
def test_operations_commute_with_complex_embedding(a, b):
    assert close(embed(a + b), embed(a) + embed(b))
    assert close(embed(a * b), embed(a) * embed(b))
    if not b.is_zero():
        assert close(embed(a / b), embed(a) / embed(b))


@given(scalars())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(scalars(), st.integers(0, 6))
def test_power_matches_repeated_product(a, k):
    p = CyclotomicNumber.from_rational(1, a.n)
    for _ in range(k):
        p = p * a
    assert a**k == p


def test_named_constants():
    i = CyclotomicNumber.i()
    rho = CyclotomicNumber.rho()
    assert i * i == -1
    assert rho**3 == 1 and rho != 1
    assert 1 + rho + rho * rho == 0
    assert CyclotomicNumber.zeta(12, 3) == i
    assert CyclotomicNumber.zeta(12, 4) == rho
    assert close(embed(rho), mpmath.mpc(-0.5, mpmath.sqrt(3) / 2))


def test_mixed_conductors_promote():
    i = CyclotomicNumber.i(4)
    w = CyclotomicNumber.zeta(3, 1, 3)
    prod = i * w
    assert prod.n % 12 == 0
    assert close(embed(prod), embed(i) * embed(w))


def test_equality_across_conductors():
    assert CyclotomicNumber.i(4) == CyclotomicNumber.i(12)
    assert hash(CyclotomicNumber.i(4)) == hash(CyclotomicNumber.i(12))
    assert CyclotomicNumber.from_rational(Fraction(3, 4), 5) == Fraction(3, 4)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 7, 10, 12, 45])
def test_sqrt_integer(m):
    r = sqrt_integer(m)
    assert r * r == m
    assert close(embed(r), mpmath.sqrt(m))


def test_sqrt_integer_rejects_non_positive():
    with pytest.raises(ValueError):
        sqrt_integer(-3)


@pytest.mark.parametrize(
    "value, r",
    [(-1, 2), (-1, 3), (8, 3), (Fraction(-27, 8), 3), (16, 4), (-4, 2), (2, 2), (-3, 2)],
)
def test_nth_root(value, r):
    root = nth_root(value, r)
    assert root**r == value


def test_nth_root_of_unit_multiple():
    a = CyclotomicNumber.i() * 4
    root = nth_root(a, 2)
    assert root * root == a


def test_nth_root_outside_tower():
    with pytest.raises(ExtensionUnsupported):
        nth_root(2, 3)


def test_conductor_cap():
    set_max_conductor(24)
    try:
        with pytest.raises(ExtensionUnsupported):
            CyclotomicNumber.zeta(35)
    finally:
        set_max_conductor(120)


def test_roots_of_unity_are_distinct():
    rs = roots_of_unity(6)
    assert len(set(rs)) == 6
    assert all(r**6 == 1 for r in rs)


@given(scalars(conductors=(12,)))
@settings(max_examples=60)
def test_format_round_trips_through_parser(a):
    again = parse_poly(format_number(a), ()).constant_term()
    assert again == a


def test_format_small_cases():
    assert format_number(coerce(0)) == "0"
    assert format_number(coerce(Fraction(-1, 2))) == "-1/2"
    assert format_number(CyclotomicNumber.i()) == "i"


def test_random_scalars_embed_consistently():
    from germinv.generators import random_scalar

    rng = random.Random(3)
    for _ in range(50):
        a, b = random_scalar(rng), random_scalar(rng, nonzero=True)
        assert close(embed(a / b) * embed(b), embed(a))
