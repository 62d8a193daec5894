"""Standard bases in the local ring and quotient dimensions dim O/I.

Mora's tangent-cone normal form w.r.t. the anti-graded lexicographic order
(lowest degree first, lex tie-break).  ``jet_codimension`` is an independent
brute-force check that never touches the standard-basis code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .cyclotomic import CyclotomicNumber
from .errors import ResourceExceeded
from .poly import Exp, LocalPolynomial, local_key

INFINITE = math.inf

DEFAULT_PAIR_CAP = 20000
DEFAULT_STAIRCASE_BOUND = 10000


@dataclass(frozen=True)
class LocalOrder:
    """Anti-graded lex order on a fixed variable list (the only one offered)."""

    variables: tuple[str, ...]
    kind: str = "ds-lex"

    def key(self, e: Exp):
        return local_key(e)

    def leading(self, f: LocalPolynomial) -> Exp:
        return min(f.terms, key=local_key)


@dataclass(frozen=True)
class StandardBasis:
    generators: tuple[LocalPolynomial, ...]
    order: LocalOrder
    leading_ideal: tuple[Exp, ...] = field(default=())
    corner: int | None = None  # m^corner lies in the ideal

    @property
    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leading_ideal)


class _Elt:
    """Polynomial with cached leading data (internal to the Mora loop)."""

    __slots__ = ("terms", "lead", "lc", "ecart")

    def __init__(self, terms: dict):
        self.terms = terms
        self.lead = min(terms, key=local_key)
        self.lc = terms[self.lead]
        self.ecart = max(sum(e) for e in terms) - sum(self.lead)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce_step(h: dict, lh: Exp, g: _Elt) -> dict:
    """h - (lc(h)/lc(g)) * x^(lh - lead g) * g, computed in place on a copy."""
    c = h[lh] / g.lc
    shift = tuple(a - b for a, b in zip(lh, g.lead))
    out = dict(h)
    for e, v in g.terms.items():
        ee = tuple(a + b for a, b in zip(e, shift))
        w = out.get(ee)
        w = -(v * c) if w is None else w - v * c
        if w.is_zero():
            out.pop(ee, None)
        else:
            out[ee] = w
    return out


def _truncate(terms: dict, corner: int | None) -> dict:
    if corner is None:
        return terms
    return {e: c for e, c in terms.items() if sum(e) < corner}


def _nf_mora(f: dict, basis: list[_Elt], corner: int | None = None) -> dict:
    """Weak normal form of f w.r.t. basis (Mora's algorithm)."""
    h = _truncate(f, corner)
    T = list(basis)
    while h:
        lh = min(h, key=local_key)
        best = None
        for g in T:
            if _divides(g.lead, lh) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            break
        he = _Elt(h)
        if best.ecart > he.ecart:
            T.append(he)
        h = _truncate(_reduce_step(h, lh, best), corner)
    return h


def _spoly(f: _Elt, g: _Elt) -> dict:
    lcm = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
    sf = tuple(a - b for a, b in zip(lcm, f.lead))
    sg = tuple(a - b for a, b in zip(lcm, g.lead))
    cf, cg = f.lc.inverse(), g.lc.inverse()
    out: dict = {}
    for e, v in f.terms.items():
        out[tuple(a + b for a, b in zip(e, sf))] = v * cf
    for e, v in g.terms.items():
        ee = tuple(a + b for a, b in zip(e, sg))
        w = out.get(ee)
        w = -(v * cg) if w is None else w - v * cg
        if w.is_zero():
            out.pop(ee, None)
        else:
            out[ee] = w
    return out


def _highest_corner(leads: list[Exp], nvars: int) -> int | None:
    """N with m^N contained in the monomial ideal, when all pure powers occur."""
    pure = [None] * nvars
    for e in leads:
        nz = [k for k, x in enumerate(e) if x]
        if len(nz) == 1:
            k = nz[0]
            if pure[k] is None or e[k] < pure[k]:
                pure[k] = e[k]
    if any(p is None for p in pure):
        return None
    return sum(p - 1 for p in pure) + 1


def standard_basis(
    gens: Sequence[LocalPolynomial],
    order: LocalOrder | None = None,
    pair_cap: int = DEFAULT_PAIR_CAP,
    use_corner: bool = True,
) -> StandardBasis:
    """Standard basis of the ideal generated by ``gens`` in the local ring."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("standard basis of the zero ideal")
    variables = gens[0].variables
    if order is None:
        order = LocalOrder(variables)
    nv = len(variables)
    unit = (0,) * nv
    for g in gens:
        if unit in g.terms:
            one = LocalPolynomial.constant(variables, 1)
            return StandardBasis((one,), order, (unit,))

    S: list[_Elt] = []
    pairs: list[tuple[int, int]] = []
    # leads of the inputs already lie in the leading ideal, so they may fix the corner
    corner = _highest_corner([_Elt(dict(g.terms)).lead for g in gens], nv) if use_corner else None

    def add(terms):
        nonlocal corner
        e = _Elt(terms)
        k = len(S)
        S.append(e)
        for i in range(k):
            a, b = S[i].lead, e.lead
            if any(x and y for x, y in zip(a, b)):
                pairs.append((i, k))
        if use_corner:
            new = _highest_corner([x.lead for x in S], nv)
            if new is not None and (corner is None or new < corner):
                corner = new
        return e

    for g in gens:
        h = _nf_mora(dict(g.terms), S, corner)
        if h:
            if unit in h or min(h, key=local_key) == unit:
                one = LocalPolynomial.constant(variables, 1)
                return StandardBasis((one,), order, (unit,))
            add(h)

    processed = 0
    while pairs:
        # smallest lcm degree first, then insertion order
        best = min(
            range(len(pairs)),
            key=lambda k: (
                sum(max(a, b) for a, b in zip(S[pairs[k][0]].lead, S[pairs[k][1]].lead)),
                pairs[k],
            ),
        )
        i, j = pairs.pop(best)
        processed += 1
        if processed > pair_cap:
            raise ResourceExceeded(f"standard basis pair queue exceeded {pair_cap}")
        sp = _spoly(S[i], S[j])
        if not sp:
            continue
        h = _nf_mora(sp, S, corner)
        if h:
            if min(h, key=local_key) == unit:
                one = LocalPolynomial.constant(variables, 1)
                return StandardBasis((one,), order, (unit,))
            add(h)

    if corner is not None:
        # m^corner lies in I; restore pure powers that truncation removed outright
        one = CyclotomicNumber.from_rational(1)
        for k in range(nv):
            if not any(e.lead[k] and sum(e.lead) == e.lead[k] for e in S):
                S.append(_Elt({tuple(corner if m == k else 0 for m in range(nv)): one}))

    # drop generators whose lead is divisible by another's (minimal leading ideal)
    leads = [e.lead for e in S]
    keep = []
    for k, e in enumerate(S):
        redundant = any(
            _divides(leads[m], e.lead) and (leads[m] != e.lead or m < k)
            for m in range(len(S))
            if m != k
        )
        if not redundant:
            keep.append(e)
    polys = tuple(LocalPolynomial._raw(variables, dict(e.terms)) for e in keep)
    leads = tuple(sorted({e.lead for e in keep}, key=local_key))
    return StandardBasis(polys, order, leads, corner)


def mora_normal_form(f: LocalPolynomial, sb: StandardBasis) -> LocalPolynomial:
    """Weak normal form of f; zero iff f lies in the ideal."""
    basis = [_Elt(dict(g.terms)) for g in sb.generators]
    return LocalPolynomial._raw(f.variables, _nf_mora(dict(f.terms), basis, sb.corner))


def ideal_contains(sb: StandardBasis, f: LocalPolynomial) -> bool:
    if sb.is_unit or f.is_zero():
        return True
    return mora_normal_form(f, sb).is_zero()


def staircase(leads: Sequence[Exp], nvars: int, bound: int = DEFAULT_STAIRCASE_BOUND):
    """Monomials outside the monomial ideal, or None when infinitely many."""
    if any(not any(e) for e in leads):
        return []
    if _highest_corner(list(leads), nvars) is None:
        return None
    start = (0,) * nvars
    seen = {start}
    stack = [start]
    while stack:
        m = stack.pop()
        for k in range(nvars):
            n = m[:k] + (m[k] + 1,) + m[k + 1:]
            if n in seen or any(_divides(e, n) for e in leads):
                continue
            seen.add(n)
            if len(seen) > bound:
                return None
            stack.append(n)
    return sorted(seen, key=local_key)


def local_codimension(
    gens: Sequence[LocalPolynomial], bound: int = DEFAULT_STAIRCASE_BOUND, **kw
) -> int | float:
    """dim_C O/I for the ideal I generated by gens; INFINITE if not finite."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return INFINITE
    sb = standard_basis(gens, **kw)
    st = staircase(sb.leading_ideal, len(gens[0].variables), bound)
    return INFINITE if st is None else len(st)


# -- independent oracle -------------------------------------------------------------


def _monomials_upto(nvars: int, cap: int) -> list[Exp]:
    out = []
    for d in range(cap + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for k in combo:
                e[k] += 1
            out.append(tuple(e))
    return out


def _all_rational(gens) -> bool:
    return all(c.is_rational() for g in gens for c in g.terms.values())


def _rank_integer(rows: list[dict]) -> int:
    """Rank over Q of integer sparse rows (fraction-free elimination)."""
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                g = math.gcd(*row.values())
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                pivots[col] = row
                break
            prow = pivots[col]
            a, b = prow[col], row[col]
            g = math.gcd(a, b)
            ma, mb = a // g, b // g
            new = {k: v * ma for k, v in row.items()}
            for k, v in prow.items():
                w = new.get(k, 0) - v * mb
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = new
    return len(pivots)


def _rank_field(rows: list[dict]) -> int:
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                inv = row[col].inverse()
                pivots[col] = {k: v * inv for k, v in row.items()}
                break
            prow = pivots[col]
            c = row[col]
            for k, v in prow.items():
                w = row.get(k)
                w = -(v * c) if w is None else w - v * c
                if w.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = w
    return len(pivots)


def jet_codimension_oracle(gens: Sequence[LocalPolynomial], degree_cap: int) -> int:
    """dim of O / (I + m^(cap+1)) by exact linear algebra on jets.

    Equals the local codimension once m^(cap+1) lies in I.
    """
    if degree_cap < 0:
        raise ValueError("degree_cap must be non-negative")
    gens = [g for g in gens if not g.is_zero()]
    nv = len(gens[0].variables) if gens else 0
    monos = _monomials_upto(nv, degree_cap)
    index = {e: k for k, e in enumerate(sorted(monos, key=local_key))}
    rational = _all_rational(gens)
    rows = []
    for g in gens:
        gt = [(e, c) for e, c in g.terms.items() if sum(e) <= degree_cap]
        if not gt:
            continue
        if rational:
            lcd = 1
            for _, c in gt:
                lcd = math.lcm(lcd, c.den)
            gt = [(e, c.num[0] * (lcd // c.den)) for e, c in gt]
        og = min(sum(e) for e, _ in gt)
        for m in monos:
            if sum(m) + og > degree_cap:
                continue
            row = {}
            for e, c in gt:
                ee = tuple(a + b for a, b in zip(e, m))
                if sum(ee) <= degree_cap:
                    row[index[ee]] = c
            if row:
                rows.append(row)
    rank = _rank_integer(rows) if rational else _rank_field(rows)
    return len(monos) - rank


def stable_jet_codimension(gens: Sequence[LocalPolynomial], max_cap: int = 60) -> int | float:
    """Raise the jet cap until dim O/(I + m^k) stops growing.

    Two equal consecutive values force m^k inside I by Nakayama, so the
    stabilized value is the exact codimension.  INFINITE if no
    stabilization happens below ``max_cap``.
    """
    prev = None
    for cap in range(0, max_cap + 1):
        cur = jet_codimension_oracle(gens, cap)
        if cur == prev:
            return cur
        prev = cur
    return INFINITE


def same_ideal(f: Sequence[LocalPolynomial], g: Sequence[LocalPolynomial]) -> bool:
    """Equality of ideals in the local ring via mutual membership."""
    sf, sg = standard_basis(f), standard_basis(g)
    return all(ideal_contains(sf, x) for x in g) and all(ideal_contains(sg, x) for x in f)

