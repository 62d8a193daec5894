from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germinv.errors import ResourceExceeded
from germinv.expr import parse_poly
from germinv.generators import random_polynomial, random_zero_dimensional_ideal
from germinv.local import (
    INFINITE,
    ideal_contains,
    jet_codimension_oracle,
    local_codimension,
    mora_normal_form,
    same_ideal,
    stable_jet_codimension,
    standard_basis,
    staircase,
)
from germinv.poly import LocalPolynomial

V = ("s", "t")


def P(text, variables=V):
    return parse_poly(text, variables)


@pytest.mark.parametrize(
    "gens, codim",
    [
        (["s", "t"], 1),
        (["s^2", "t^3"], 6),
        (["t^2 + s^3", "s*t"], 5),
        (["2*t", "s", "-2*t^2"], 1),
        (["s^2 + t^3", "s*t^2"], 7),
        (["s*(1 + t)", "t^4 - s"], 4),
    ],
)
def test_known_codimensions(gens, codim):
    I = [P(g) for g in gens]
    assert local_codimension(I) == codim
    assert jet_codimension_oracle(I, 2 * codim + 2) == codim


def test_standard_basis_leads():
    sb = standard_basis([P("t^2 + s^3"), P("s*t")])
    assert set(sb.leading_ideal) == {(1, 1), (0, 2), (4, 0)}


def test_units_are_invertible_locally():
    sb = standard_basis([P("1 + s")])
    assert sb.is_unit
    assert local_codimension([P("s*(1 - t) + 1")]) == 0


def test_infinite_codimension():
    assert local_codimension([P("s*t")]) == INFINITE
    assert local_codimension([P("s^2"), P("s*t")]) == INFINITE
    assert math.isinf(local_codimension([LocalPolynomial.zero(V)]))


def test_membership():
    sb = standard_basis([P("t^2 + s^3"), P("s*t")])
    assert ideal_contains(sb, P("s^4"))
    assert ideal_contains(sb, P("t^3"))
    assert not ideal_contains(sb, P("s^3"))
    assert mora_normal_form(P("s^5 + t^2"), sb) != LocalPolynomial.zero(V)


def test_staircase_of_monomial_ideal():
    assert sorted(staircase([(2, 0), (0, 3)], 2)) == sorted(
        [(a, b) for a in range(2) for b in range(3)]
    )
    assert staircase([(1, 1)], 2) is None


def test_pair_cap():
    I = [P("t^2 + s^3"), P("s*t")]
    with pytest.raises(ResourceExceeded):
        standard_basis(I, pair_cap=0)


def test_corner_truncation_does_not_change_result():
    # without the corner Mora's normal form can grow badly, so keep these small
    rng = random.Random(11)
    for _ in range(20):
        I = random_zero_dimensional_ideal(rng, 2, max_degree=5, max_codim=12)
        a = local_codimension(I)
        b = local_codimension(I, use_corner=False)
        assert a == b


def test_pure_power_of_corner_degree_survives():
    # pure powers s, t^3 put the corner at degree 3, where t^3 itself lives
    I = [P("s"), P("t^3")]
    assert local_codimension(I) == 3


seeds = st.integers(0, 2**32 - 1)


@given(seeds, st.integers(2, 4))
@settings(max_examples=40, deadline=None)
def test_agrees_with_jet_oracle(seed, nvars):
    I = random_zero_dimensional_ideal(random.Random(seed), nvars, max_codim=24)
    assert local_codimension(I) == stable_jet_codimension(I)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_invariant_under_unit_multiplication(seed):
    rng = random.Random(seed)
    I = random_zero_dimensional_ideal(rng, 2)
    variables = I[0].variables
    unit = LocalPolynomial.constant(variables, 1) + random_polynomial(rng, variables, 1, 2, 2)
    J = [g * unit for g in I]
    assert local_codimension(J) == local_codimension(I)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_generator_order_is_irrelevant(seed):
    rng = random.Random(seed)
    I = random_zero_dimensional_ideal(rng, 3)
    J = list(I)
    rng.shuffle(J)
    assert local_codimension(J) == local_codimension(I)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_adding_a_member_does_not_change_the_ideal(seed):
    rng = random.Random(seed)
    I = random_zero_dimensional_ideal(rng, 2)
    variables = I[0].variables
    f = I[0] * random_polynomial(rng, variables, 0, 2, 2) + I[-1]
    assert local_codimension(I + [f]) == local_codimension(I)


def test_same_ideal():
    assert same_ideal([P("s"), P("t^2")], [P("s + t^2"), P("t^2 - s*t")])
    assert not same_ideal([P("s"), P("t^2")], [P("s"), P("t^3")])


def test_oracle_rejects_negative_cap():
    with pytest.raises(ValueError):
        jet_codimension_oracle([P("s")], -1)
