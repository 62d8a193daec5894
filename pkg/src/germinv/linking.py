"""Integer calculus of framings on a link with an involution.

A link has components gamma_i, pairwise linking numbers, an involution
sigma grouping components into orbits (twisted when sigma(i) = i) and one
integer Delta per orbit.  A framing is stored only through its a-profile.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence


class WrongKind(ValueError):
    """A twisted-only operation was applied to an untwisted orbit or vice versa."""


@dataclass(frozen=True)
class AbstractLink:
    lk: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...]
    delta: tuple[int, ...]  # one entry per orbit, in orbit order

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.lk) != n or any(len(r) != n for r in self.lk):
            raise ValueError("lk must be an l x l matrix")
        for i in range(n):
            if self.sigma[self.sigma[i]] != i:
                raise ValueError("sigma must be an involution")
            for k in range(n):
                if i != k and self.lk[i][k] != self.lk[k][i]:
                    raise ValueError("lk must be symmetric")
        if len(self.delta) != len(self.orbits):
            raise ValueError("one Delta per orbit expected")
        for j, orb in enumerate(self.orbits):
            if len(orb) == 1 and self.delta[j] % 2:
                raise ValueError(f"Delta on twisted orbit {j} must be even")

    @classmethod
    def build(cls, lk: Sequence[Sequence[int]], sigma: Sequence[int], delta: Sequence[int]):
        return cls(tuple(tuple(r) for r in lk), tuple(sigma), tuple(delta))

    @property
    def l(self) -> int:
        return len(self.sigma)

    @property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen, out = set(), []
        for i, s in enumerate(self.sigma):
            if i in seen:
                continue
            orb = (i,) if s == i else (i, s)
            seen.update(orb)
            out.append(orb)
        return tuple(out)

    def twisted(self, j: int) -> bool:
        return len(self.orbits[j]) == 1

    def orbit_of(self, i: int) -> int:
        for j, orb in enumerate(self.orbits):
            if i in orb:
                return j
        raise IndexError(i)

    def delta_at(self, i: int) -> int:
        return self.delta[self.orbit_of(i)]

    def lk_sum(self, i: int) -> int:
        return sum(self.lk[i][k] for k in range(self.l) if k != i)


@dataclass(frozen=True)
class Framing:
    link: AbstractLink
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != self.link.l:
            raise ValueError("one a-value per component expected")


def canonical_framings(link: AbstractLink):
    """(Seifert framing, global normal framing, per-component Seifert framings)."""
    seifert = Framing(link, (0,) * link.l)
    normal = Framing(link, tuple(link.delta_at(i) for i in range(link.l)))
    component = Framing(link, tuple(link.lk_sum(i) for i in range(link.l)))
    return seifert, normal, component


def b_of(f: Framing, i: int) -> int:
    return f.a[i] - f.link.delta_at(i)


def a_component(f: Framing, i: int) -> int:
    """a-invariant measured against the Seifert framing of gamma_i alone."""
    return f.a[i] - f.link.lk_sum(i)


def plus(f: Framing, i: int) -> Framing:
    a = list(f.a)
    a[i] += 1
    return Framing(f.link, tuple(a))


def _orbit(link: AbstractLink, j: int, twisted: bool):
    if link.twisted(j) != twisted:
        kind = "twisted" if link.twisted(j) else "untwisted"
        raise WrongKind(f"orbit {j} is {kind}")
    return link.orbits[j]


def c_untwisted(link: AbstractLink, j: int, v: Framing, w: Framing) -> int:
    """Linking value of (v on gamma_i, w on gamma_sigma(i)) for an untwisted orbit."""
    i, si = _orbit(link, j, False)
    return v.a[i] + w.a[si] - link.delta[j]


def d_twisted(link: AbstractLink, j: int, v: Framing, w: Framing) -> int:
    (i,) = _orbit(link, j, True)
    return v.a[i] + w.a[i] - link.delta[j]


def c_twisted(link: AbstractLink, j: int, v: Framing) -> int:
    (i,) = _orbit(link, j, True)
    return v.a[i] - link.delta[j] // 2


def c_value(link: AbstractLink, j: int, f: Framing) -> int:
    """c_j of a single framing, whichever kind the orbit is."""
    if link.twisted(j):
        return c_twisted(link, j, f)
    return c_untwisted(link, j, f, f)


def L1(link: AbstractLink) -> int:
    """-1/2 of the sum of Delta over components (even by construction)."""
    total = sum(link.delta_at(i) for i in range(link.l))
    return -(total // 2)


def L2(link: AbstractLink) -> int:
    return -L1(link)


def L_v(link: AbstractLink, f: Framing) -> int:
    cs = sum(c_value(link, j, f) for j in range(len(link.orbits)))
    bs = sum(b_of(f, i) for i in range(link.l))
    return cs - bs


def nearby_class(link: AbstractLink, f: Framing) -> tuple[int, ...]:
    """Per-orbit key; equal keys give the same gluing on that orbit."""
    out = []
    for orb in link.orbits:
        out.append(f.a[orb[0]] if len(orb) == 1 else f.a[orb[0]] + f.a[orb[1]])
    return tuple(out)


def nearby_linking(link: AbstractLink, f: Framing, j: int) -> int:
    return c_value(link, j, f)


def milnor_framing(link: AbstractLink, vi: Sequence[int]) -> Framing:
    """Framing pair gluing the Milnor fibre boundary, from vertical indices.

    Untwisted orbit {i, s}: v_i is the Seifert framing of gamma_i and v_s
    carries vi_j on top of the Seifert framing of gamma_s.  Twisted: v_i
    carries vi_j on top of the Seifert framing of gamma_i.
    """
    a = [0] * link.l
    for j, orb in enumerate(link.orbits):
        if len(orb) == 1:
            (i,) = orb
            a[i] = vi[j] + link.lk_sum(i)
        else:
            i, s = orb
            a[i] = link.lk_sum(i)
            a[s] = vi[j] + link.lk_sum(s)
    return Framing(link, tuple(a))


def random_link(rng: random.Random, max_l: int = 6, max_lk: int = 10, max_delta: int = 20):
    """Random link data: l <= 6, |lk| <= 10, Delta in [-20, 20], even on twisted orbits."""
    l = rng.randint(1, max_l)
    perm = list(range(l))
    rng.shuffle(perm)
    sigma = list(range(l))
    k = 0
    while k + 1 < l:
        if rng.random() < 0.5:
            a, b = perm[k], perm[k + 1]
            sigma[a], sigma[b] = b, a
            k += 2
        else:
            k += 1
    lk = [[0] * l for _ in range(l)]
    for i in range(l):
        for j in range(i + 1, l):
            lk[i][j] = lk[j][i] = rng.randint(-max_lk, max_lk)
    probe = AbstractLink.build(lk, sigma, [0] * _count_orbits(sigma))
    delta = []
    for orb in probe.orbits:
        d = rng.randint(-max_delta, max_delta)
        if len(orb) == 1 and d % 2:
            d += -1 if d > 0 else 1
        delta.append(d)
    return AbstractLink.build(lk, sigma, delta)


def _count_orbits(sigma: Sequence[int]) -> int:
    return sum(1 for i, s in enumerate(sigma) if i <= s)


def random_framing(rng: random.Random, link: AbstractLink, bound: int = 30) -> Framing:
    return Framing(link, tuple(rng.randint(-bound, bound) for _ in range(link.l)))
