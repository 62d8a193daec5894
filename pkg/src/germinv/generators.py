"""Random inputs for property suites: scalars, polynomials, zero-dimensional ideals."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .cyclotomic import DEFAULT_CONDUCTOR, CyclotomicNumber
from .poly import LocalPolynomial

VARIABLE_NAMES = ("x", "y", "z", "w")


def random_scalar(rng: random.Random, conductor: int = DEFAULT_CONDUCTOR, height: int = 5,
                  nonzero: bool = False) -> CyclotomicNumber:
    """A random element of Q(zeta_conductor) with small numerators and denominators."""
    while True:
        num = [Fraction(rng.randint(-height, height), rng.randint(1, 3))
               for _ in range(conductor)]
        keep = rng.randint(1, 3)
        for k in range(conductor):
            if k >= keep and rng.random() < 0.8:
                num[k] = Fraction(0)
        den = math.lcm(*(q.denominator for q in num))
        x = CyclotomicNumber(conductor, [int(q * den) for q in num], den)
        if not (nonzero and x.is_zero()):
            return x


def _small_coefficient(rng: random.Random) -> CyclotomicNumber:
    if rng.random() < 0.15:
        return CyclotomicNumber.i() * rng.choice((1, -1, 2))
    return CyclotomicNumber.from_rational(Fraction(rng.choice((1, -1, 2, -2, 3)), rng.choice((1, 1, 2))))


def monomials(nvars: int, low: int, high: int):
    for deg in range(low, high + 1):
        for e in itertools.product(range(deg + 1), repeat=nvars):
            if sum(e) == deg:
                yield e


def random_polynomial(rng: random.Random, variables, min_degree: int = 1, max_degree: int = 4,
                      terms: int = 4) -> LocalPolynomial:
    pool = list(monomials(len(variables), min_degree, max_degree))
    chosen = rng.sample(pool, min(terms, len(pool)))
    return LocalPolynomial(variables, {e: _small_coefficient(rng) for e in chosen})


def random_zero_dimensional_ideal(rng: random.Random, nvars: int, max_degree: int = 6,
                                  max_codim: int = 40) -> list[LocalPolynomial]:
    """Generators x_i^a_i + (random terms of higher degree), plus sometimes an extra element.

    The pure powers sit in the leading ideal, so the colength is at most the
    product of the a_i, which is kept at most ``max_codim``.
    """
    variables = VARIABLE_NAMES[:nvars]
    while True:
        a = [rng.randint(1, 4 if nvars == 2 else 3) for _ in range(nvars)]
        if math.prod(a) <= max_codim and max(a) < max_degree:
            break
    gens = []
    for i, ai in enumerate(a):
        e = tuple(ai if k == i else 0 for k in range(nvars))
        head = LocalPolynomial(variables, {e: _small_coefficient(rng)})
        tail = random_polynomial(rng, variables, ai + 1, max_degree, rng.randint(0, 3))
        gens.append(head + tail)
    if rng.random() < 0.5:
        gens.append(random_polynomial(rng, variables, 2, max_degree, rng.randint(1, 3)))
    rng.shuffle(gens)
    return gens
