"""Property suites runnable from the command line and reused by the tests.

Each suite returns a list of failure descriptions; an empty list is a pass.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import linking as lc
from .catalog import catalog_germ
from .generators import random_polynomial, random_scalar, random_zero_dimensional_ideal
from .germ import analyze, failed_checks
from .local import jet_codimension_oracle, local_codimension, stable_jet_codimension
from .poly import LocalPolynomial, divided_difference


def field_axioms(rng: random.Random, n: int = 200) -> list[str]:
    fails = []
    for _ in range(n):
        a, b, c = (random_scalar(rng) for _ in range(3))
        if (a + b) * c != a * c + b * c:
            fails.append(f"distributivity {a}, {b}, {c}")
        if a * b != b * a or a + b != b + a:
            fails.append(f"commutativity {a}, {b}")
        if not a.is_zero() and a * a.inverse() != 1:
            fails.append(f"inverse {a}")
        if (a - b) + b != a:
            fails.append(f"subtraction {a}, {b}")
    return fails


def divided_difference_identity(rng: random.Random, n: int = 50) -> list[str]:
    """(t - u) * f[t, u] = f(s, t) - f(s, u)."""
    fails = []
    variables = ("s", "t", "u")
    t, u = (LocalPolynomial.var(variables, v) for v in ("t", "u"))
    for _ in range(n):
        f = random_polynomial(rng, ("s", "t"), 1, 5, rng.randint(1, 5))
        dd = divided_difference(f, "u", "t")
        rhs = f.with_variables(variables) - f.rename({"t": "u"}).with_variables(variables)
        if dd * (t - u) != rhs:
            fails.append(f"divided difference of {f}")
    return fails


def local_algebra_oracle(rng: random.Random, n: int = 30) -> list[str]:
    fails = []
    for k in range(n):
        gens = random_zero_dimensional_ideal(rng, 2 + k % 3)
        a = local_codimension(gens)
        b = stable_jet_codimension(gens)
        if a != b:
            fails.append(f"codim {a} != oracle {b} for {gens}")
        elif len(gens[0].variables) == 2 and jet_codimension_oracle(gens, 2 * a + 2) != a:
            fails.append(f"2c+2 jet bound disagrees for {gens}")
    return fails


def linking_properties(rng: random.Random, n: int = 10_000) -> list[str]:
    """Identities of the framing calculus on random links and framings."""
    fails = []
    for _ in range(n):
        link = lc.random_link(rng)
        v = lc.random_framing(rng, link)
        w = lc.random_framing(rng, link)
        seifert, normal, _ = lc.canonical_framings(link)
        if lc.L1(link) != -lc.L2(link):
            fails.append(f"L1 != -L2 on {link}")
        if lc.L_v(link, v) != lc.L2(link) or lc.L_v(link, w) != lc.L_v(link, v):
            fails.append(f"L_v not constant on {link}")
        for j, orb in enumerate(link.orbits):
            i = orb[0]
            if link.twisted(j):
                if lc.c_twisted(link, j, lc.plus(v, i)) != lc.c_twisted(link, j, v) + 1:
                    fails.append(f"c step rule, twisted orbit {j}")
                if lc.d_twisted(link, j, lc.plus(v, i), w) != lc.d_twisted(link, j, v, w) + 1:
                    fails.append(f"d step rule, orbit {j}")
                if lc.d_twisted(link, j, seifert, normal) != 0:
                    fails.append(f"d(S, N) != 0 on orbit {j}")
                if lc.d_twisted(link, j, v, v) != 2 * lc.c_twisted(link, j, v):
                    fails.append(f"d(v, v) != 2c(v) on orbit {j}")
            else:
                s = orb[1]
                c = lc.c_untwisted(link, j, v, w)
                if lc.c_untwisted(link, j, lc.plus(v, i), w) != c + 1:
                    fails.append(f"c step rule in v, orbit {j}")
                if lc.c_untwisted(link, j, v, lc.plus(w, s)) != c + 1:
                    fails.append(f"c step rule in w, orbit {j}")
                if lc.c_untwisted(link, j, seifert, normal) != 0:
                    fails.append(f"c(S, N) != 0 on orbit {j}")
                shifted = lc.plus(v, i)
                a = list(shifted.a)
                a[s] -= 1
                if lc.nearby_class(link, lc.Framing(link, tuple(a))) != lc.nearby_class(link, v):
                    fails.append(f"nearby class moved on orbit {j}")
    return fails


def catalog_identities(rng: random.Random | None = None, ks: range = range(1, 4)) -> list[str]:
    fails = []
    for fam in ("S", "B", "C", "H"):
        for k in ks:
            rep = analyze(catalog_germ(fam, k))
            bad = failed_checks(rep)
            if bad:
                fails.append(f"{rep.name}: {', '.join(bad)}")
    rep = analyze(catalog_germ("marar"))
    if failed_checks(rep):
        fails.append(f"marar: {', '.join(failed_checks(rep))}")
    return fails


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[random.Random], list[str]]


SUITES = (
    Suite("field axioms", field_axioms),
    Suite("divided differences", divided_difference_identity),
    Suite("local algebra vs jet oracle", local_algebra_oracle),
    Suite("linking calculus", lambda rng: linking_properties(rng, 2000)),
    Suite("catalog identities", catalog_identities),
)


def run_selftest(seed: int = 0, echo: Callable[[str], None] = print) -> bool:
    ok = True
    for suite in SUITES:
        fails = suite.run(random.Random(seed))
        echo(f"{'PASS' if not fails else 'FAIL'}  {suite.name}")
        for f in fails[:5]:
            echo(f"      {f}")
        ok = ok and not fails
    return ok


__all__ = ["SUITES", "Suite", "run_selftest"]
