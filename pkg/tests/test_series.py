from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from germinv.cyclotomic import CyclotomicNumber
from germinv.expr import parse_poly
from germinv.series import INF, TSeries, evaluate_polynomial

coeffs = st.integers(-4, 4)


@st.composite
def exact_series(draw, min_exp=0, max_exp=8):
    terms = draw(st.dictionaries(st.integers(min_exp, max_exp), coeffs, min_size=1, max_size=5))
    return TSeries(terms)


precs = st.integers(1, 12)


def agree_below(a: TSeries, b: TSeries, prec) -> bool:
    lim = min(prec, 40)
    return all(a.coefficient(e) == b.coefficient(e) for e in range(-10, int(lim)))


@given(exact_series(), exact_series(), precs, precs)
def test_truncated_product_is_certified(a, b, pa, pb):
    approx = a.truncated(pa) * b.truncated(pb)
    assert agree_below(approx, a * b, approx.prec)


@given(exact_series(), exact_series(), precs, precs)
def test_truncated_sum_is_certified(a, b, pa, pb):
    approx = a.truncated(pa) + b.truncated(pb)
    assert approx.prec == min(pa, pb)
    assert agree_below(approx, a + b, approx.prec)


@given(exact_series(), precs)
def test_inverse(a, p):
    x = a.truncated(p)
    assume(x.known_order() is not None)
    inv = x.inverse()
    one = x * inv
    assert agree_below(one, TSeries.constant(1), one.prec)
    assert one.prec >= p - x.known_order()


@given(exact_series(), exact_series(min_exp=1), precs)
@settings(max_examples=50)
def test_compose_matches_polynomial_substitution(a, inner, p):
    outer = a.truncated(p)
    approx = outer.compose(inner)
    exact = TSeries()
    for e, c in a.terms.items():
        exact = exact + inner**e * c
    assert agree_below(approx, exact, approx.prec)


def test_precision_of_product_uses_orders():
    a = TSeries({2: 1}, 5)  # tau^2 + O(tau^5)
    b = TSeries({3: 1}, 4)  # tau^3 + O(tau^4)
    assert (a * b).prec == min(5 + 3, 4 + 2)


def test_exact_zero_and_orders():
    z = TSeries()
    assert z.is_exactly_zero() and z.known_order() is None
    u = TSeries({}, 7)
    assert not u.is_exactly_zero() and u.valuation_bound() == 7


def test_laurent_inverse_of_monomial():
    x = TSeries.monomial(3, 2)
    assert x.inverse() == TSeries.monomial(-3, CyclotomicNumber.from_rational(0.5))


def test_inverse_needs_a_known_term():
    with pytest.raises(ZeroDivisionError):
        TSeries({}, 5).inverse()


def test_substitutions():
    a = TSeries({1: 1, 2: 3}, 4)
    assert a.substitute_power(2) == TSeries({2: 1, 4: 3}, 8)
    i = CyclotomicNumber.i()
    assert a.scale_variable(i) == TSeries({1: i, 2: -3}, 4)
    assert a.shift(-1) == TSeries({0: 1, 1: 3}, 3)


def test_evaluate_polynomial_on_a_branch():
    # t^2 + s^3 vanishes on s = tau^2, t = i tau^3
    f = parse_poly("t^2 + s^3")
    s = TSeries.monomial(2)
    t = TSeries.monomial(3, CyclotomicNumber.i())
    assert evaluate_polynomial(f, {"s": s, "t": t}).is_exactly_zero()


def test_power():
    a = TSeries({0: 1, 1: 1}, INF)
    assert a**3 == TSeries({0: 1, 1: 3, 2: 3, 3: 1})
