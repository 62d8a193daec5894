"""Newton-Puiseux expansion of plane curve germs over cyclotomic fields.

Each branch is returned as ``s = tau^m, t = sum c_e tau^e`` or, when the
branch is tangent to ``s = 0``, with the roles of s and t exchanged
(``swapped``).  Orders of functions along branches are certified against
the tracked series precision and re-expanded on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CyclotomicNumber, coerce, format_number, nth_root, roots_of_unity
from .errors import ExtensionUnsupported, TruncationExceeded
from .local import INFINITE
from .poly import LocalPolynomial
from .series import INF, TSeries, evaluate_polynomial

REFINE_LIMIT = 16
MAX_SINGULAR_STEPS = 200

Bivariate = dict  # {(x exponent, y exponent): CyclotomicNumber}


# -- Newton polygon ---------------------------------------------------------------


@dataclass(frozen=True)
class NewtonSegment:
    """Edge of the Newton polygon, listed from the low-t end to the high-t end.

    ``start``/``end`` are (s-exponent, t-exponent); ``slope`` is dt/ds of
    the edge, or None for a degenerate vertical piece.
    """

    start: tuple[int, int]
    end: tuple[int, int]
    slope: Fraction | None

    @property
    def weight(self) -> Fraction | None:
        """gamma with t ~ s^gamma along the edge."""
        if self.slope is None or self.slope == 0:
            return None
        return -1 / self.slope


def _staircase_hull(points) -> list[tuple[int, int]]:
    """Vertices of the lower-left hull, by increasing first coordinate."""
    pts = sorted(set(points))
    pareto = []
    best_j = math.inf
    for i, j in pts:
        if j < best_j:
            pareto.append((i, j))
            best_j = j
    hull: list[tuple[int, int]] = []
    for p in pareto:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(f: LocalPolynomial) -> list[NewtonSegment]:
    """Compact edges of the lower-left hull of the support of f in (s, t).

    A polygon reduced to one vertex (s^a t^b) yields its trivial pieces: a
    horizontal one when b > 0 and a vertical one when a > 0.
    """
    if f.is_zero():
        raise ValueError("Newton polygon of zero")
    hull = _staircase_hull(f.terms)
    if len(hull) == 1:
        (a, b) = hull[0]
        out = []
        if b > 0:
            out.append(NewtonSegment((a, b), (a, b), Fraction(0)))
        if a > 0:
            out.append(NewtonSegment((a, b), (a, b), None))
        return out
    segs = []
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        segs.append(NewtonSegment((i2, j2), (i1, j1), Fraction(j2 - j1, i2 - i1)))
    return segs[::-1]


# -- univariate solving -------------------------------------------------------------


def _trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _udivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError
    inv = b[-1].inverse()
    q = [coerce(0)] * max(len(a) - len(b) + 1, 1)
    while len(_trim(a)) >= len(b):
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, v in enumerate(b):
            a[k + i] = a[k + i] - c * v
        a.pop()
    return q, a


def _ugcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, _trim(r)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _uderiv(a: list) -> list:
    return [a[k] * k for k in range(1, len(a))]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _format_equation(coeffs: Sequence[CyclotomicNumber], var: str = "w") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append(f"({format_number(c)})" + ("*" + mono if mono else ""))
    return " + ".join(parts) + " = 0"


def _roots_squarefree(p: list) -> list[CyclotomicNumber]:
    p = _trim(list(p))
    deg = len(p) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [-p[0] / p[1]]
    if all(c.is_zero() for c in p[1:-1]):
        base = nth_root(-p[0] / p[-1], deg)
        return [base * z for z in roots_of_unity(deg, base.n)]
    if deg == 2:
        a, b, c = p[2], p[1], p[0]
        sq = nth_root(b * b - a * c * 4, 2)
        return [(-b + sq) / (a * 2), (-b - sq) / (a * 2)]
    if all(c.is_rational() for c in p):
        fr = [c.to_fraction() for c in p]
        lcd = math.lcm(*[x.denominator for x in fr])
        ints = [int(x * lcd) for x in fr]
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for sign in (1, -1):
                    r = Fraction(sign * num, den)
                    val = sum(Fraction(ci) * r ** k for k, ci in enumerate(ints))
                    if val == 0:
                        root = coerce(r)
                        q, _ = _udivmod(p, [-root, coerce(1)])
                        return [root] + _roots_squarefree(q)
    raise ExtensionUnsupported(f"characteristic equation {_format_equation(p)} not solvable")


def solve_characteristic(coeffs: Sequence) -> list[tuple[CyclotomicNumber, int]]:
    """Distinct roots of a univariate polynomial (coefficients by degree) with
    their multiplicities, or ExtensionUnsupported.
    """
    p = _trim([coerce(c) for c in coeffs])
    if len(p) <= 1:
        return []
    g = _ugcd(p, _uderiv(p))
    sf = _udivmod(p, g)[0] if len(g) > 1 else p
    out = []
    for r in _roots_squarefree(sf):
        m = 0
        q = p
        while True:
            quo, rem = _udivmod(q, [-r, coerce(1)])
            if _trim(rem):
                break
            m += 1
            q = quo
        out.append((r, m))
    return out


# -- expansion ------------------------------------------------------------------------


@dataclass(frozen=True)
class PuiseuxBranch:
    """One branch: x = tau^ramification, y = sum c_e tau^e with (x, y) = (s, t),
    or (t, s) when ``swapped``.  ``series`` is known up to tau^truncation,
    or completely when ``exact``.
    """

    ramification: int
    series: tuple[tuple[int, CyclotomicNumber], ...]
    truncation: int
    swapped: bool
    exact: bool = False
    source: LocalPolynomial | None = field(default=None, compare=False, repr=False)
    index: int = field(default=-1, compare=False, repr=False)

    def y_series(self) -> TSeries:
        return TSeries(dict(self.series), INF if self.exact else self.truncation + 1)

    def x_series(self) -> TSeries:
        return TSeries.monomial(self.ramification)

    def s_series(self) -> TSeries:
        return self.y_series() if self.swapped else self.x_series()

    def t_series(self) -> TSeries:
        return self.x_series() if self.swapped else self.y_series()

    def refined(self, factor: int = 2) -> PuiseuxBranch:
        """Re-expand the same branch with a larger truncation."""
        if self.exact or self.source is None:
            return self
        bs = puiseux_branches(self.source, self.truncation * factor)
        return bs.branches[self.index]

    def describe(self, names=("s", "t")) -> str:
        x, y = (names[1], names[0]) if self.swapped else names
        body = " + ".join(f"({format_number(c)})*tau^{e}" for e, c in self.series) or "0"
        tail = "" if self.exact else f" + O(tau^{self.truncation + 1})"
        return f"{x} = tau^{self.ramification}, {y} = {body}{tail}"


@dataclass(frozen=True)
class BranchSet:
    branches: tuple[PuiseuxBranch, ...]
    defining: LocalPolynomial
    truncation: int

    def __len__(self):
        return len(self.branches)

    def __iter__(self):
        return iter(self.branches)

    def __getitem__(self, k):
        return self.branches[k]


def default_truncation(f: LocalPolynomial) -> int:
    t = f.variables[1]
    return max(1, 4 * f.degree_in(t) * f.degree())


def _to_frame(f: LocalPolynomial, swapped: bool) -> Bivariate:
    if swapped:
        return {(e[1], e[0]): c for e, c in f.terms.items()}
    return dict(f.terms)


def _strip_x(F: Bivariate) -> Bivariate:
    a = min(e[0] for e in F)
    return {(i - a, j): c for (i, j), c in F.items()} if a else F


def _divide_y(F: Bivariate) -> tuple[Bivariate, bool]:
    if all(j >= 1 for _, j in F):
        return {(i, j - 1): c for (i, j), c in F.items()}, True
    return F, False


def _binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def _substitute(F: Bivariate, p: int, q: int, W: int, c: CyclotomicNumber) -> Bivariate:
    """x^-W * F(x^q, x^p (c + y))."""
    cpow = {}
    out: dict = {}
    for (i, j), a in F.items():
        ex = q * i + p * j - W
        for l in range(j + 1):
            k = j - l
            if k not in cpow:
                cpow[k] = c ** k
            v = a * cpow[k] * _binomial(j, l)
            key = (ex, l)
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {e: v for e, v in out.items() if not v.is_zero()}


def _edges(F: Bivariate):
    """(p, q, W, psi coefficients) per compact edge, largest gamma first."""
    hull = _staircase_hull(F)
    edges = []
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        di, dj = i2 - i1, j1 - j2
        g = math.gcd(di, dj)
        p, q = di // g, dj // g
        W = q * i1 + p * j1
        psi = [coerce(0)] * (g + 1)
        for (i, j), a in F.items():
            if q * i + p * j == W:
                psi[(j - j2) // q] = a
        edges.append((Fraction(p, q), p, q, W, psi))
    edges.sort(key=lambda e: -e[0])
    return edges


@dataclass
class _Path:
    M: int
    A: dict
    e: int

    def step(self, p: int, q: int, c: CyclotomicNumber) -> _Path:
        A = {k * q: v for k, v in self.A.items()}
        e = self.e * q + p
        A[e] = c
        return _Path(self.M * q, A, e)


def _eval_bivariate(F: Bivariate, Y: TSeries, prec: int) -> TSeries:
    powers = [TSeries.constant(1)]
    out = TSeries._raw({}, prec)
    for (a, b), c in F.items():
        while len(powers) <= b:
            powers.append((powers[-1] * Y).truncated(prec))
        out = out + powers[b].shift(a) * c
    return out.truncated(prec)


def _solve_simple(F: Bivariate, P: int) -> TSeries:
    """Y with F(tau, Y(tau)) = 0 mod tau^P, Y(0) = 0, F_y(0,0) != 0."""
    if P <= 0:
        return TSeries._raw({}, max(P, 0))
    F = {e: c for e, c in F.items() if e[0] + e[1] <= P}
    Fy = {}
    for (a, b), c in F.items():
        if b:
            Fy[(a, b - 1)] = c * b
    Y = TSeries._raw({}, 1)
    prec = 1
    while prec < P:
        prec = min(2 * prec, P)
        Yp = TSeries._raw(dict(Y.terms), prec)
        num = _eval_bivariate(F, Yp, prec)
        den = _eval_bivariate(Fy, Yp, prec)
        Y = (Yp - num * den.inverse()).truncated(prec)
    return Y


def _expand(F: Bivariate, r: int, path: _Path, N: int, gamma_ok, depth: int = 0):
    """Yield (path, Y or None) for every branch below the current chart."""
    if depth > MAX_SINGULAR_STEPS:
        raise ValueError("Puiseux expansion did not separate branches; is f reduced?")
    F, has_y = _divide_y(F)
    if has_y:
        yield path, None
        r -= 1
    if r <= 0:
        return
    if r == 1 and gamma_ok is None:
        yield path, _solve_simple(F, N - path.e + 1)
        return
    for gamma, p, q, W, psi in _edges(F):
        if gamma_ok is not None and not gamma_ok(gamma):
            continue
        for w, mult in solve_characteristic(psi):
            c = nth_root(w, q)
            F1 = _substitute(F, p, q, W, c)
            yield from _expand(F1, mult, path.step(p, q, c), N, None, depth + 1)


def _frame_branches(f: LocalPolynomial, swapped: bool, N: int):
    F = _strip_x(_to_frame(f, swapped))
    if not F:
        return
    r0 = min(j for (i, j) in F if i == 0) if any(i == 0 for i, _ in F) else 0
    gamma_ok = (lambda g: g > 1) if swapped else (lambda g: g >= 1)
    for path, Y in _expand(F, r0, _Path(1, {}, 0), N, gamma_ok):
        terms = {k: v for k, v in path.A.items() if k <= N or Y is None}
        if Y is None:
            yield path.M, terms, True
        else:
            for k, v in Y.terms.items():
                if k + path.e <= N:
                    terms[k + path.e] = terms.get(k + path.e, coerce(0)) + v
            yield path.M, {k: v for k, v in terms.items() if not v.is_zero()}, False


def puiseux_branches(f: LocalPolynomial, truncation: int | None = None) -> BranchSet:
    """Branches of the reduced curve germ f = 0 at the origin."""
    if len(f.variables) != 2:
        raise ValueError("puiseux_branches expects a polynomial in two variables")
    if f.is_zero():
        raise ValueError("the zero polynomial defines no curve")
    if not f.constant_term().is_zero():
        return BranchSet((), f, truncation or 0)
    N = truncation if truncation is not None else default_truncation(f)
    out = []
    for swapped in (True, False):
        for M, terms, exact in _frame_branches(f, swapped, N):
            out.append((M, tuple(sorted(terms.items())), exact, swapped))
    branches = tuple(
        PuiseuxBranch(M, series, N, swapped, exact, f, k)
        for k, (M, series, exact, swapped) in enumerate(out)
    )
    return BranchSet(branches, f, N)


# -- orders along branches -------------------------------------------------------------


def _certified(v: TSeries):
    o = v.known_order()
    if o is not None:
        return o
    if v.prec == INF:
        return INFINITE
    return None


def series_order(v: TSeries):
    """Certified order of a series, INFINITE if exactly zero, None if unknown."""
    return _certified(v)


def order_along_branch(g: LocalPolynomial, b: PuiseuxBranch, limit: int = REFINE_LIMIT):
    """tau-order of g on the branch (INFINITE if g vanishes on it)."""
    base = b.truncation
    s, t = g.variables
    while True:
        v = evaluate_polynomial(g, {s: b.s_series(), t: b.t_series()})
        o = _certified(v)
        if o is not None:
            return o
        if b.exact or b.truncation >= limit * base:
            raise TruncationExceeded(
                f"order of {g} along branch {b.index} not certified at truncation {b.truncation}"
            )
        b = b.refined()


@dataclass(frozen=True)
class WeierstrassForm:
    """prod_k (y - Y(zeta^k tau)) as a polynomial in y over series in x."""

    swapped: bool
    coefficients: tuple[TSeries, ...]

    def evaluate(self, s: TSeries, t: TSeries) -> TSeries:
        X, Y = (t, s) if self.swapped else (s, t)
        result = TSeries._raw({}, INF)
        power = TSeries.constant(1)
        for j, a in enumerate(self.coefficients):
            if j:
                power = power * Y
            result = result + _compose(a, X) * power
        return result


def _compose(a: TSeries, X: TSeries) -> TSeries:
    if a.prec == 0:
        return TSeries._raw({}, 0)
    return a.compose(X)


def weierstrass(b: PuiseuxBranch) -> WeierstrassForm:
    """Weierstrass polynomial of a single branch (up to a unit)."""
    M = b.ramification
    Y = b.y_series()
    zetas = roots_of_unity(M, M) if M > 1 else [coerce(1)]
    poly = [TSeries.constant(1)]
    for z in zetas:
        Yz = Y.scale_variable(z)
        new = [TSeries._raw({}, INF)] * (len(poly) + 1)
        for j, a in enumerate(poly):
            new[j + 1] = new[j + 1] + a
            new[j] = new[j] - a * Yz
        poly = new
    coeffs = []
    for a in poly:
        terms = {}
        for e, c in a.terms.items():
            if e % M:
                raise ArithmeticError("conjugate product is not a series in x")
            terms[e // M] = c
        prec = INF if a.prec == INF else -(-a.prec // M)
        coeffs.append(TSeries(terms, prec))
    return WeierstrassForm(b.swapped, tuple(coeffs))


def weierstrass_polynomial(b: PuiseuxBranch, variables=("s", "t")) -> LocalPolynomial:
    """The Weierstrass polynomial as a LocalPolynomial (exact branches only)."""
    if not b.exact:
        raise ValueError("only exact branches have a polynomial Weierstrass form")
    W = weierstrass(b)
    terms = {}
    for j, a in enumerate(W.coefficients):
        for e, c in a.terms.items():
            terms[(j, e) if b.swapped else (e, j)] = c
    return LocalPolynomial(variables, terms)


def branch_order_of(k: PuiseuxBranch, i: PuiseuxBranch):
    """Order of branch k's Weierstrass form along branch i, or None if the
    current precision cannot decide."""
    return _certified(weierstrass(k).evaluate(i.s_series(), i.t_series()))


def intersection_number(bi: PuiseuxBranch, bk: PuiseuxBranch, limit: int = REFINE_LIMIT):
    base = max(bi.truncation, bk.truncation)
    while True:
        o = branch_order_of(bk, bi)
        if o is not None:
            return o
        if (bi.exact and bk.exact) or max(bi.truncation, bk.truncation) >= limit * base:
            raise TruncationExceeded(
                f"intersection of branches {bi.index} and {bk.index} not certified"
            )
        bi, bk = bi.refined(), bk.refined()


def intersection_matrix(bs: BranchSet) -> list[list]:
    n = len(bs.branches)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if i != k:
                out[i][k] = intersection_number(bs.branches[i], bs.branches[k])
    return out
