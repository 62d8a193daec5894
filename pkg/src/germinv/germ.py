"""Invariants of finitely determined germs (C^2, 0) -> (C^3, 0).

``analyze`` runs the whole pipeline: cross-cap and triple-point numbers,
the double point curve and its branches, the pairing of branches with the
same image, vertical indices, framing invariants, the linking invariant L
and the surgery data of the Milnor fibre boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cyclotomic import DEFAULT_CONDUCTOR, CyclotomicNumber, coerce, nth_root, roots_of_unity
from .errors import (
    GermInvError,
    InternalInconsistency,
    InvalidOverride,
    NeedsOverride,
    NotApplicable,
    NotFinitelyDetermined,
    TruncationExceeded,
)
from .linking import AbstractLink, c_value, milnor_framing, nearby_class
from .local import INFINITE, local_codimension, same_ideal
from .poly import (
    LocalPolynomial,
    divided_difference,
    first_subresultant,
    higher_divided_difference,
    jacobian_minors,
    resultant,
    squarefree_part,
)
from .puiseux import (
    REFINE_LIMIT,
    BranchSet,
    PuiseuxBranch,
    default_truncation,
    intersection_matrix,
    order_along_branch,
    puiseux_branches,
    series_order,
    weierstrass,
)
from .series import INF, TSeries, evaluate_polynomial

VARS = ("s", "t")
MATCH_ORDER = 50


@dataclass(frozen=True)
class Germ:
    """A germ phi = (phi_1, phi_2, phi_3) in (s, t) with optional overrides.

    ``override_pairing`` lists sigma(i) for every branch index i (0-based,
    in the deterministic branch order of ``puiseux_branches``).
    ``override_vi`` holds per-component vertical indices used as fixtures.
    ``factors`` optionally lists the irreducible factors of d for the
    intersection cross-check.
    """

    name: str
    phi: tuple[LocalPolynomial, LocalPolynomial, LocalPolynomial]
    override_d: LocalPolynomial | None = None
    override_T: int | None = None
    override_pairing: tuple[int, ...] | None = None
    override_vi: tuple[int, ...] | None = None
    factors: tuple[LocalPolynomial, ...] | None = None
    conductor: int = DEFAULT_CONDUCTOR

    def __post_init__(self):
        if len(self.phi) != 3:
            raise ValueError("phi needs three components")
        for k, f in enumerate(self.phi):
            if f.variables != VARS:
                raise ValueError(f"phi[{k}] must be a polynomial in s, t")
            if not f.constant_term().is_zero():
                raise ValueError(f"phi[{k}] does not vanish at the origin")
        if self.override_T is not None and self.override_T < 0:
            raise ValueError("override_T must be non-negative")


@dataclass(frozen=True)
class DoublePointData:
    d: LocalPolynomial
    branches: BranchSet
    sigma: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    inter: tuple[tuple[int, ...], ...]

    @property
    def twisted(self) -> tuple[bool, ...]:
        return tuple(len(c) == 1 for c in self.components)

    def lk_sum(self, i: int) -> int:
        return sum(v for k, v in enumerate(self.inter[i]) if k != i)

    def total_intersection(self) -> int:
        """Sum of D_i . D_k over ordered pairs i != k."""
        return sum(self.lk_sum(i) for i in range(len(self.sigma)))


@dataclass(frozen=True)
class InvariantReport:
    name: str
    corank: int
    C: int
    T: int
    L: int
    d: LocalPolynomial
    dp: DoublePointData
    lambdas: tuple[int, ...] | None
    vi: tuple[int | None, ...]
    vi_sum: int
    delta: tuple[int, ...] | None
    aN: tuple[int, ...] | None
    gluing: tuple[dict, ...]
    checks: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()


# -- basic invariants ------------------------------------------------------------------


def _linear_part(f: LocalPolynomial) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    z = coerce(0)
    return f.terms.get((1, 0), z), f.terms.get((0, 1), z)


def corank(g: Germ) -> int:
    rows = [_linear_part(f) for f in g.phi]
    if any(not (a * d - b * c).is_zero() for (a, b) in rows for (c, d) in rows):
        return 0
    if any(not a.is_zero() or not b.is_zero() for a, b in rows):
        return 1
    return 2


def normalize_corank_one(g: Germ) -> tuple[LocalPolynomial, LocalPolynomial, LocalPolynomial]:
    """Linear left-right change bringing a corank-1 germ to (s, p, q).

    Needs a component that is exactly linear; p and q come back with no
    linear part.
    """
    s = LocalPolynomial.var(VARS, "s")
    t = LocalPolynomial.var(VARS, "t")
    for j, f in enumerate(g.phi):
        if f.is_zero() or f.degree() != 1:
            continue
        a, b = _linear_part(f)
        if not a.is_zero():
            # s' = a s + b t, t' = t
            src = {"s": (s - t * b) * a.inverse(), "t": t}
        else:
            # s' = b t, t' = s
            src = {"s": t, "t": s * b.inverse()}
        rest = [h.substitute(src, VARS) for k, h in enumerate(g.phi) if k != j]
        out = []
        for h in rest:
            la, lb = _linear_part(h)
            if not lb.is_zero():
                raise InternalInconsistency("linear part not proportional after normalization")
            out.append(h - s * la)
        return s, out[0], out[1]
    raise NeedsOverride(
        f"germ {g.name!r}: no component is linear, so the (s, p, q) form needs a "
        "nonlinear coordinate change; supply d and T overrides"
    )


def cross_cap_number(g: Germ) -> int:
    c = local_codimension(list(jacobian_minors(g.phi)))
    if c == INFINITE:
        raise NotFinitelyDetermined(f"germ {g.name!r}: ramification ideal has infinite codimension")
    return int(c)


def _unit_d() -> LocalPolynomial:
    return LocalPolynomial.constant(VARS, 1)


def double_point_curve_of(p: LocalPolynomial, q: LocalPolynomial) -> LocalPolynomial:
    P = divided_difference(p, "u", "t")
    Q = divided_difference(q, "u", "t")
    if P.degree_in("u") == 0 and Q.degree_in("u") == 0:
        raise NotFinitelyDetermined("divided differences do not involve the second point")
    R = resultant(P, Q, "u")
    if R.is_zero():
        raise NotFinitelyDetermined("resultant of the divided differences vanishes")
    return squarefree_part(R.with_variables(VARS)).normalized()


def _validated_override_d(g: Germ) -> LocalPolynomial:
    d = g.override_d
    if d.is_zero() or not d.constant_term().is_zero():
        raise InvalidOverride(f"germ {g.name!r}: override d must vanish at the origin")
    sf = squarefree_part(d).normalized()
    if sf.degree() != d.degree():
        raise InvalidOverride(f"germ {g.name!r}: override d is not squarefree")
    return d.normalized()


def double_point_curve(g: Germ) -> LocalPolynomial:
    """Reduced equation of the double point curve."""
    r = corank(g)
    if r == 0:
        if g.override_d is not None:
            raise InvalidOverride(f"germ {g.name!r}: an immersion has no double point curve")
        return _unit_d()
    try:
        _, p, q = normalize_corank_one(g) if r == 1 else (None, None, None)
    except NeedsOverride:
        p = None
    if p is None:
        if g.override_d is None:
            raise NeedsOverride(f"germ {g.name!r}: corank {r} needs an override for d")
        return _validated_override_d(g)
    d = double_point_curve_of(p, q)
    if g.override_d is not None:
        od = _validated_override_d(g)
        if not same_ideal([od], [d]):
            raise InvalidOverride(f"germ {g.name!r}: override d differs from the computed curve")
        return od
    return d


def triple_point_ideal(p: LocalPolynomial, q: LocalPolynomial) -> list[LocalPolynomial]:
    names = ("s", "t1", "t2", "t3")
    out = []
    for f in (p, q):
        f1 = f.rename({"t": "t1"})
        out.append(higher_divided_difference(f1, "t1", ("t1", "t2"), names))
    for f in (p, q):
        f1 = f.rename({"t": "t1"})
        out.append(higher_divided_difference(f1, "t1", ("t1", "t2", "t3"), names))
    return out


def triple_point_number_of(p: LocalPolynomial, q: LocalPolynomial) -> int:
    c = local_codimension(triple_point_ideal(p, q))
    if c == INFINITE:
        raise NotFinitelyDetermined("triple point space has infinite codimension")
    if c % 6:
        raise InternalInconsistency(f"triple point codimension {c} is not divisible by 6")
    return int(c) // 6


def triple_point_number(g: Germ) -> int:
    r = corank(g)
    if r == 0:
        return 0
    try:
        _, p, q = normalize_corank_one(g) if r == 1 else (None, None, None)
    except NeedsOverride:
        p = None
    if p is None:
        if g.override_T is None:
            raise NeedsOverride(f"germ {g.name!r}: corank {r} needs an override for T")
        return g.override_T
    T = triple_point_number_of(p, q)
    if g.override_T is not None and g.override_T != T:
        raise InvalidOverride(f"germ {g.name!r}: override T={g.override_T} but computed T={T}")
    return T


# -- branch pairing --------------------------------------------------------------------


def _components(sigma: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    out = []
    for i, s in enumerate(sigma):
        if i == s:
            out.append((i,))
        elif i < s:
            out.append((i, s))
    return tuple(out)


def _check_involution(sigma: Sequence[int], err=InternalInconsistency):
    n = len(sigma)
    if sorted(sigma) != list(range(n)) or any(sigma[sigma[i]] != i for i in range(n)):
        raise err(f"pairing {list(sigma)} is not an involution of the branches")


def _partner_equation(p: LocalPolynomial, q: LocalPolynomial):
    """(a, b) in (s, t) such that the second preimage u satisfies a*u + b = 0."""
    P = divided_difference(p, "u", "t")
    Q = divided_difference(q, "u", "t")
    if P.degree_in("u") == 1:
        c = P.coefficients_in("u")
    elif Q.degree_in("u") == 1:
        c = Q.coefficients_in("u")
    else:
        try:
            a, b = first_subresultant(P, Q, "u")
        except ValueError as exc:
            raise NeedsOverride(f"partner equation unavailable: {exc}") from None
        c = {1: a, 0: b}
    zero = LocalPolynomial.zero(P.variables)
    a, b = c.get(1, zero), c.get(0, zero)
    if a.is_zero():
        raise NeedsOverride("partner equation degenerates (leading coefficient zero)")
    return a.with_variables(VARS), b.with_variables(VARS)


def _partner_series(a, b, br: PuiseuxBranch) -> TSeries | None:
    ser = {"s": br.s_series(), "t": br.t_series()}
    A = evaluate_polynomial(a, ser)
    B = evaluate_polynomial(b, ser)
    oA = A.known_order()
    if oA is None:
        if A.prec == INF:
            raise NeedsOverride(f"partner equation vanishes on branch {br.index}")
        return None
    rel = br.truncation + 1
    if A.prec == INF and len(A.terms) > 1:
        A = A.truncated(oA + rel)
    return -(B * A.inverse())


def _pair_by_partner(p, q, bs: BranchSet) -> tuple[int, ...]:
    a, b = _partner_equation(p, q)
    n = len(bs)
    sigma = [None] * n
    branches = list(bs.branches)
    base = max((br.truncation for br in branches), default=1)
    for i in range(n):
        while True:
            found = _match_partner(a, b, branches, i)
            if found is not None:
                sigma[i] = found
                break
            if all(br.exact for br in branches) or branches[i].truncation >= REFINE_LIMIT * base:
                raise TruncationExceeded(f"no unique partner for branch {i} at truncation")
            branches = [br.refined() for br in branches]
    _check_involution(sigma)
    return tuple(sigma)


def _match_partner(a, b, branches, i):
    bi = branches[i]
    u = _partner_series(a, b, bi)
    if u is None:
        return None
    if u.valuation_bound() < 1:
        raise InternalInconsistency(f"partner of branch {i} does not pass through the origin")
    s_i = bi.s_series()
    undecided = []
    for k, bk in enumerate(branches):
        v = weierstrass(bk).evaluate(s_i, u)
        o = series_order(v)
        if o is None or o == INFINITE:
            undecided.append(k)
    if len(undecided) == 1:
        return undecided[0]
    if not undecided:
        raise InternalInconsistency(f"partner curve of branch {i} lies on no branch")
    return None


def _image(phi, br: PuiseuxBranch) -> list[TSeries]:
    ser = {"s": br.s_series(), "t": br.t_series()}
    return [evaluate_polynomial(f, ser) for f in phi]


def _images_match(Ii, Ik, nontrivial: bool) -> bool:
    """Is Ik(zeta tau) = Ii(tau) up to tau^MATCH_ORDER for some root of unity zeta?"""
    cap = MATCH_ORDER + 1
    lead = None
    for x, y in zip(Ii, Ik):
        ox, oy = x.known_order(), y.known_order()
        if ox is None and oy is None:
            continue
        if ox != oy:
            return False
        if lead is None or ox < lead[0]:
            lead = (ox, x.terms[ox], y.terms[oy])
    if lead is None:
        return False
    o, ci, ck = lead
    base = nth_root(ci / ck, o)
    for z in roots_of_unity(o, base.n):
        zeta = base * z
        if nontrivial and zeta == coerce(1):
            continue
        ok = True
        for x, y in zip(Ii, Ik):
            ys = y.scale_variable(zeta)
            p = min(x.prec, ys.prec, cap)
            if x.truncated(p) != ys.truncated(p):
                ok = False
                break
        if ok:
            return True
    return False


def _pair_by_image(phi, bs: BranchSet, sigma_override) -> tuple[int, ...]:
    n = len(bs)
    images = [_image(phi, br) for br in bs]
    if sigma_override is not None:
        if len(sigma_override) != n:
            raise InvalidOverride(f"pairing lists {len(sigma_override)} branches, d has {n}")
        _check_involution(sigma_override, InvalidOverride)
        for i, k in enumerate(sigma_override):
            if not _images_match(images[i], images[k], nontrivial=(i == k)):
                raise InvalidOverride(f"branches {i + 1} and {k + 1} do not have the same image")
        return tuple(sigma_override)
    sigma = []
    for i in range(n):
        cands = [k for k in range(n) if _images_match(images[i], images[k], nontrivial=(i == k))]
        if len(cands) != 1:
            raise NeedsOverride(f"cannot decide the partner of branch {i + 1}; supply a pairing")
        sigma.append(cands[0])
    _check_involution(sigma, NeedsOverride)
    return tuple(sigma)


def branch_pairing(g: Germ, bs: BranchSet, normal_form=None) -> DoublePointData:
    if normal_form is not None:
        _, p, q = normal_form
        sigma = _pair_by_partner(p, q, bs)
        if g.override_pairing is not None and tuple(g.override_pairing) != sigma:
            raise InvalidOverride(
                f"germ {g.name!r}: override pairing {list(g.override_pairing)} "
                f"differs from computed {list(sigma)}"
            )
    else:
        if any(not br.exact and br.truncation < MATCH_ORDER for br in bs):
            bs = puiseux_branches(bs.defining, max(bs.truncation, MATCH_ORDER))
        sigma = _pair_by_image(g.phi, bs, g.override_pairing)
    inter = tuple(tuple(r) for r in intersection_matrix(bs))
    return DoublePointData(bs.defining, bs, sigma, _components(sigma), inter)


# -- indices -----------------------------------------------------------------------------


def special_normal_form(nf) -> bool:
    """(s, t^2, t*h) with h even in t."""
    if nf is None:
        return False
    _, p, q = nf
    t = LocalPolynomial.var(VARS, "t")
    if p != t * t or q.is_zero():
        return False
    return all(e[1] % 2 == 1 for e in q.terms)


def lambda_indices(dp: DoublePointData, nf, T: int) -> tuple[int, ...]:
    if T != 0 or not special_normal_form(nf):
        raise NotApplicable("lambda indices need a corank-1 germ (s, t^2, t*h(s, t^2)) with T = 0")
    t = LocalPolynomial.var(VARS, "t")
    out = []
    for i, br in enumerate(dp.branches):
        o = order_along_branch(t, br)
        if o == INFINITE:
            raise InternalInconsistency(f"t vanishes on branch {i}")
        out.append(-dp.lk_sum(i) - o)
    return tuple(out)


def vertical_indices(dp: DoublePointData, C: int, T: int, lambdas=None, fixture=None):
    """(per-component values or None, vi_sum)."""
    vi_sum = -dp.total_intersection() - C + 3 * T
    ncomp = len(dp.components)
    if fixture is not None:
        if len(fixture) != ncomp:
            raise InvalidOverride(f"{len(fixture)} vertical indices given for {ncomp} components")
        return tuple(fixture), vi_sum
    if lambdas is not None:
        vals = tuple(sum(lambdas[i] for i in comp) for comp in dp.components)
        return vals, vi_sum
    if ncomp == 1:
        return (vi_sum,), vi_sum
    return (None,) * ncomp, vi_sum


def framing_invariants(dp: DoublePointData, vi: Sequence[int]):
    """(a(N_i) per branch, Delta per component) from the vertical indices."""
    aN = [0] * len(dp.sigma)
    delta = []
    for j, comp in enumerate(dp.components):
        if len(comp) == 2:
            i, s = comp
            a = vi[j] + dp.lk_sum(i) + dp.lk_sum(s)
            aN[i] = aN[s] = a
        else:
            (i,) = comp
            a = 2 * (vi[j] + dp.lk_sum(i))
            if a % 2:
                raise InternalInconsistency("odd normal framing invariant on a twisted component")
            aN[i] = a
        delta.append(a)
    return tuple(aN), tuple(delta)


def vi_from_framing(dp: DoublePointData, aN: Sequence[int]) -> tuple[int, ...]:
    out = []
    for comp in dp.components:
        if len(comp) == 2:
            i, s = comp
            out.append(aN[i] - dp.lk_sum(i) - dp.lk_sum(s))
        else:
            (i,) = comp
            out.append(aN[i] // 2 - dp.lk_sum(i))
    return tuple(out)


def ekholm_szucs_L(C: int, T: int, aN: Sequence[int] | None = None) -> int:
    L = C - 3 * T
    if aN is not None and 2 * L != -sum(aN):
        raise InternalInconsistency(f"L = {L} but -1/2 sum a(N_i) = {-sum(aN) / 2}")
    return L


def milnor_boundary_data(dp: DoublePointData, vi, aN) -> tuple[dict, ...]:
    out = []
    for j, comp in enumerate(dp.components):
        twisted = len(comp) == 1
        entry = {
            "component": [i + 1 for i in comp],
            "kind": "twisted" if twisted else "untwisted",
            "vi": vi[j],
            "matrix": None if vi[j] is None else [[-1, vi[j]], [0, 1]],
            "alternative": None,
        }
        if aN is not None:
            a = aN[comp[0]]
            entry["alternative"] = [[-1, a // 2 if twisted else a], [0, 1]]
        out.append(entry)
    return tuple(out)


def link_data(dp: DoublePointData, delta: Sequence[int]) -> AbstractLink:
    return AbstractLink.build(dp.inter, dp.sigma, delta)


# -- checks -------------------------------------------------------------------------------


def _sum_rule(f: LocalPolynomial, branches, g: LocalPolynomial):
    """True/False for the sum rule, None when it does not apply."""
    orders = []
    for br in branches:
        o = order_along_branch(g, br)
        if o == INFINITE:
            return None
        orders.append(o)
    c = local_codimension([f, g])
    if c == INFINITE:
        return None
    return sum(orders) == c


def intersection_oracle(dp: DoublePointData, factors=None):
    d = dp.d
    if d.is_constant():
        return None
    s = LocalPolynomial.var(VARS, "s")
    t = LocalPolynomial.var(VARS, "t")
    results = []
    for g in (s, t, d.diff("t"), d.diff("s")):
        if g.is_zero():
            continue
        r = _sum_rule(d, dp.branches, g)
        if r is not None:
            results.append(r)
    if factors:
        fb = [puiseux_branches(f, dp.branches.truncation) for f in factors]
        for a, fa in enumerate(factors):
            for b, fbb in enumerate(factors):
                if a != b:
                    r = _sum_rule(fa, fb[a].branches, fbb)
                    if r is not None:
                        results.append(r)
    return all(results) if results else None


def consistency_checks(report: InvariantReport, factors=None) -> dict:
    dp = report.dp
    checks: dict = {}
    known = all(v is not None for v in report.vi)
    checks["eq1"] = (sum(report.vi) == report.vi_sum) if known else None
    if report.aN is not None:
        checks["L_two_routes"] = 2 * report.L == -sum(report.aN)
        link = link_data(dp, report.delta)
        v = milnor_framing(link, report.vi)
        checks["milnor_c_zero"] = all(c_value(link, j, v) == 0 for j in range(len(link.orbits)))
        keys = nearby_class(link, v)
        expect = tuple(
            report.delta[j] // 2 if len(c) == 1 else report.delta[j]
            for j, c in enumerate(dp.components)
        )
        checks["milnor_c_zero"] = checks["milnor_c_zero"] and keys == expect
    else:
        checks["L_two_routes"] = None
        checks["milnor_c_zero"] = None
    checks["intersection_oracle"] = intersection_oracle(dp, factors)
    if report.lambdas is not None and known:
        checks["special_case"] = sum(report.vi) == -dp.total_intersection() - report.C
    else:
        checks["special_case"] = None
    return checks


# -- pipeline -----------------------------------------------------------------------------


def analyze(g: Germ, truncation: int | None = None) -> InvariantReport:
    """Run the full pipeline on a germ."""
    r = corank(g)
    C = cross_cap_number(g)
    nf = None
    if r == 1:
        try:
            nf = normalize_corank_one(g)
        except NeedsOverride:
            if g.override_d is None or g.override_T is None:
                raise
    d = double_point_curve(g)
    T = triple_point_number(g)
    notes = []
    if d.is_constant():
        bs = BranchSet((), d, 0)
        notes.append("empty double point curve: the Milnor fibre boundary is S^3")
    else:
        N = truncation if truncation is not None else default_truncation(d)
        bs = puiseux_branches(d, N)
    if len(bs) == 0:
        dp = DoublePointData(d, bs, (), (), ())
    else:
        dp = branch_pairing(g, bs, nf)
    lambdas = None
    if r == 1 and nf is not None and T == 0 and special_normal_form(nf) and len(bs):
        lambdas = lambda_indices(dp, nf, T)
    vi, vi_sum = vertical_indices(dp, C, T, lambdas, g.override_vi)
    aN = delta = None
    if all(v is not None for v in vi):
        aN, delta = framing_invariants(dp, vi)
    L = C - 3 * T
    gluing = milnor_boundary_data(dp, vi, aN)
    report = InvariantReport(
        g.name, r, C, T, L, d, dp, lambdas, tuple(vi), vi_sum, delta, aN, gluing, {}, tuple(notes)
    )
    checks = consistency_checks(report, g.factors)
    return InvariantReport(
        g.name, r, C, T, L, d, dp, lambdas, tuple(vi), vi_sum, delta, aN, gluing, checks,
        tuple(notes),
    )


def failed_checks(report: InvariantReport) -> list[str]:
    return [k for k, v in report.checks.items() if v is False]


__all__ = [
    "Germ",
    "DoublePointData",
    "InvariantReport",
    "GermInvError",
    "analyze",
    "corank",
    "cross_cap_number",
    "double_point_curve",
    "triple_point_number",
    "branch_pairing",
    "lambda_indices",
    "vertical_indices",
    "framing_invariants",
    "vi_from_framing",
    "ekholm_szucs_L",
    "milnor_boundary_data",
    "consistency_checks",
    "normalize_corank_one",
]
