"""Sparse multivariate polynomials over cyclotomic fields.

``LocalPolynomial`` keeps an ordered tuple of variable names and a dict from
exponent tuples to nonzero ``CyclotomicNumber`` coefficients.  Besides ring
arithmetic the module provides what the germ pipeline needs: derivatives,
Jacobian minors, divided differences, Sylvester resultants (Bareiss), the
first subresultant, multivariate gcd and squarefree parts.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .cyclotomic import CyclotomicNumber, coerce

Exp = tuple[int, ...]


def local_key(e: Exp) -> tuple:
    """Sort key of the local order: smaller key = larger monomial.

    Lowest total degree wins; ties go to the lexicographically larger
    exponent on the fixed variable list.
    """
    return (sum(e), tuple(-x for x in e))


class LocalPolynomial:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.variables = tuple(variables)
        clean: dict[Exp, CyclotomicNumber] = {}
        nv = len(self.variables)
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match variables {self.variables}")
                c = coerce(c)
                if not c.is_zero():
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, variables, terms) -> LocalPolynomial:
        """Internal: terms already clean (no zeros, right types)."""
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, variables) -> LocalPolynomial:
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables, c) -> LocalPolynomial:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name: str) -> LocalPolynomial:
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables, exp: Exp, c=1) -> LocalPolynomial:
        return cls(tuple(variables), {tuple(exp): c})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def constant_term(self) -> CyclotomicNumber:
        return self.terms.get((0,) * len(self.variables), coerce(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        """Total degree (-1 for zero)."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        k = self.variables.index(var)
        return max((e[k] for e in self.terms), default=-1)

    def occurring(self) -> set[str]:
        return {v for k, v in enumerate(self.variables) if any(e[k] for e in self.terms)}

    def leading_exp(self) -> Exp:
        """Leading exponent in the local order."""
        return min(self.terms, key=local_key)

    def leading_coeff(self) -> CyclotomicNumber:
        return self.terms[self.leading_exp()]

    def conductor(self) -> int:
        n = 1
        for c in self.terms.values():
            if n % c.n:
                n = n * c.n // _gcd(n, c.n)
        return n

    # arithmetic
    def _check(self, other: LocalPolynomial):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _lift(self, other) -> LocalPolynomial:
        if isinstance(other, LocalPolynomial):
            self._check(other)
            return other
        return LocalPolynomial.constant(self.variables, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                v = terms[e] + c
                if v.is_zero():
                    del terms[e]
                else:
                    terms[e] = v
            else:
                terms[e] = c
        return LocalPolynomial._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return LocalPolynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, LocalPolynomial):
            c = coerce(other)
            if c.is_zero():
                return LocalPolynomial.zero(self.variables)
            return LocalPolynomial._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        terms: dict[Exp, CyclotomicNumber] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + v
                else:
                    terms[e] = v
        return LocalPolynomial._raw(
            self.variables, {e: c for e, c in terms.items() if not c.is_zero()}
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = LocalPolynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> LocalPolynomial:
        return self * c

    def mul_monomial(self, exp: Exp, c=None) -> LocalPolynomial:
        if c is None:
            return LocalPolynomial._raw(
                self.variables,
                {tuple(a + b for a, b in zip(e, exp)): v for e, v in self.terms.items()},
            )
        c = coerce(c)
        return LocalPolynomial._raw(
            self.variables,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, LocalPolynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self == LocalPolynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"LocalPolynomial({self.variables}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # calculus and substitution
    def diff(self, var: str) -> LocalPolynomial:
        k = self.variables.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                terms[tuple(ne)] = c * e[k]
        return LocalPolynomial._raw(self.variables, terms)

    def with_variables(self, variables: Sequence[str]) -> LocalPolynomial:
        """Re-embed into a variable list containing every occurring variable."""
        variables = tuple(variables)
        idx = []
        for k, v in enumerate(self.variables):
            if v in variables:
                idx.append((k, variables.index(v)))
            elif any(e[k] for e in self.terms):
                raise ValueError(f"variable {v} occurs but is missing from {variables}")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for k, j in idx:
                ne[j] = e[k]
            terms[tuple(ne)] = c
        return LocalPolynomial._raw(variables, terms)

    def rename(self, mapping: Mapping[str, str]) -> LocalPolynomial:
        return LocalPolynomial._raw(
            tuple(mapping.get(v, v) for v in self.variables), dict(self.terms)
        )

    def substitute(self, values: Mapping[str, LocalPolynomial], variables=None) -> LocalPolynomial:
        """Replace variables by polynomials (all over ``variables``)."""
        if variables is None:
            first = next(iter(values.values()))
            variables = first.variables
        variables = tuple(variables)
        gens = []
        for v in self.variables:
            if v in values:
                gens.append(values[v])
            else:
                gens.append(LocalPolynomial.var(variables, v))
        return self.evaluate(gens, variables)

    def evaluate(self, gens: Sequence[LocalPolynomial], variables=None) -> LocalPolynomial:
        """Compose with one polynomial per variable."""
        if variables is None:
            variables = gens[0].variables
        result = LocalPolynomial.zero(variables)
        cache: dict[tuple[int, int], LocalPolynomial] = {}

        def power(k, m):
            if (k, m) not in cache:
                cache[(k, m)] = gens[k] ** m
            return cache[(k, m)]

        for e, c in self.terms.items():
            term = LocalPolynomial.constant(variables, c)
            for k, m in enumerate(e):
                if m:
                    term = term * power(k, m)
            result = result + term
        return result

    def coefficients_in(self, var: str) -> dict[int, LocalPolynomial]:
        """Coefficients as a polynomial in ``var`` (same variable list)."""
        k = self.variables.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            d = ne[k]
            ne[k] = 0
            out.setdefault(d, {})[tuple(ne)] = c
        return {d: LocalPolynomial._raw(self.variables, t) for d, t in out.items()}

    def truncate(self, max_degree: int, var: str | None = None) -> LocalPolynomial:
        """Drop terms of total degree (or degree in var) above max_degree."""
        if var is None:
            return LocalPolynomial._raw(
                self.variables, {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
            )
        k = self.variables.index(var)
        return LocalPolynomial._raw(
            self.variables, {e: c for e, c in self.terms.items() if e[k] <= max_degree}
        )

    def normalized(self) -> LocalPolynomial:
        """Scale so the leading term in the local order has coefficient 1."""
        if not self.terms:
            return self
        return self * self.leading_coeff().inverse()


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def poly_arith(f: LocalPolynomial, g: LocalPolynomial, op: str) -> LocalPolynomial:
    if f.variables != g.variables:
        raise ValueError(f"variable mismatch: {f.variables} vs {g.variables}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def gens(variables: Sequence[str]) -> tuple[LocalPolynomial, ...]:
    return tuple(LocalPolynomial.var(variables, v) for v in variables)


# -- Jacobian and divided differences ---------------------------------------------


def jacobian_minors(phi: Sequence[LocalPolynomial]) -> tuple[LocalPolynomial, ...]:
    """The three 2x2 minors of the Jacobian of a map (C^2,0) -> (C^3,0).

    Ordered by row pairs (0,1), (0,2), (1,2); for (s, t^2, st) this gives
    (2t, s, -2t^2).
    """
    if len(phi) != 3 or len(phi[0].variables) != 2:
        raise ValueError("expected three polynomials in two variables")
    a, b = phi[0].variables
    J = [(f.diff(a), f.diff(b)) for f in phi]

    def det(r1, r2):
        return J[r1][0] * J[r2][1] - J[r1][1] * J[r2][0]

    return (det(0, 1), det(0, 2), det(1, 2))


def _complete_homogeneous(variables, names: Sequence[str], degree: int) -> LocalPolynomial:
    """h_degree(names) as a polynomial over ``variables``."""
    idx = [variables.index(n) for n in names]
    terms = {}
    one = coerce(1)
    for combo in combinations_with_replacement(range(len(idx)), degree):
        e = [0] * len(variables)
        for k in combo:
            e[idx[k]] += 1
        terms[tuple(e)] = one
    return LocalPolynomial._raw(tuple(variables), terms)


def divided_difference(
    p: LocalPolynomial, new_var: str = "u", var: str | None = None
) -> LocalPolynomial:
    """(p(.., t) - p(.., u)) / (t - u) over variables (..., t, u)."""
    if var is None:
        var = p.variables[-1]
    out_vars = p.variables + (new_var,)
    return higher_divided_difference(p, var, (var, new_var), out_vars)


def higher_divided_difference(
    p: LocalPolynomial, var: str, points: Sequence[str], out_vars: Sequence[str]
) -> LocalPolynomial:
    """Divided difference of p in ``var`` over the given point variables.

    Uses that the k-th divided difference of x^b is the complete
    homogeneous polynomial h_(b-k) in the k+1 points.
    """
    out_vars = tuple(out_vars)
    k = p.variables.index(var)
    order = len(points) - 1
    keep = [(i, out_vars.index(v)) for i, v in enumerate(p.variables) if i != k]
    cache: dict[int, LocalPolynomial] = {}
    result = LocalPolynomial.zero(out_vars)
    for e, c in p.terms.items():
        b = e[k]
        if b < order:
            continue
        if b - order not in cache:
            cache[b - order] = _complete_homogeneous(out_vars, points, b - order)
        rest = [0] * len(out_vars)
        for i, j in keep:
            rest[j] = e[i]
        result = result + cache[b - order].mul_monomial(tuple(rest), c)
    return result


# -- exact division, gcd, squarefree ------------------------------------------------


def _lex_lead(f: LocalPolynomial) -> Exp:
    return max(f.terms)


def divide_exact(f: LocalPolynomial, g: LocalPolynomial) -> LocalPolynomial:
    """f / g when g divides f in the polynomial ring; ValueError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    f._check(g)
    if f.is_zero():
        return f
    if len(g.terms) == 1:
        (eg, cg), = g.terms.items()
        inv = cg.inverse()
        terms = {}
        for e, c in f.terms.items():
            d = tuple(a - b for a, b in zip(e, eg))
            if min(d) < 0:
                raise ValueError("inexact polynomial division")
            terms[d] = c * inv
        return LocalPolynomial._raw(f.variables, terms)
    lg = _lex_lead(g)
    inv = g.terms[lg].inverse()
    rem = dict(f.terms)
    q: dict[Exp, CyclotomicNumber] = {}
    gitems = list(g.terms.items())
    while rem:
        lf = max(rem)
        d = tuple(a - b for a, b in zip(lf, lg))
        if min(d) < 0:
            raise ValueError("inexact polynomial division")
        c = rem[lf] * inv
        q[d] = c
        for e, v in gitems:
            ee = tuple(a + b for a, b in zip(e, d))
            nv = rem.get(ee, None)
            nv = -(v * c) if nv is None else nv - v * c
            if nv.is_zero():
                rem.pop(ee, None)
            else:
                rem[ee] = nv
    return LocalPolynomial._raw(f.variables, q)


def _prem(a: LocalPolynomial, b: LocalPolynomial, var: str) -> LocalPolynomial:
    k = a.variables.index(var)
    db = b.degree_in(var)
    cb = b.coefficients_in(var)
    lcb = cb[db]
    while not a.is_zero() and a.degree_in(var) >= db:
        da = a.degree_in(var)
        lca = a.coefficients_in(var)[da]
        shift = [0] * len(a.variables)
        shift[k] = da - db
        a = a * lcb - (b * lca).mul_monomial(tuple(shift))
    return a


def content(f: LocalPolynomial, var: str) -> LocalPolynomial:
    c = LocalPolynomial.zero(f.variables)
    for coef in f.coefficients_in(var).values():
        c = poly_gcd(c, coef)
        if c.is_constant():
            return LocalPolynomial.constant(f.variables, 1)
    return c


def poly_gcd(f: LocalPolynomial, g: LocalPolynomial) -> LocalPolynomial:
    """Greatest common divisor, normalized to lowest-order coefficient 1.

    Content / primitive-part recursion on the occurring variable of lowest
    degree, with a primitive pseudo-remainder sequence.
    """
    f._check(g)
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    occ = f.occurring() | g.occurring()
    if not occ:
        return LocalPolynomial.constant(f.variables, 1)
    var = min(occ, key=lambda v: (max(f.degree_in(v), g.degree_in(v)), f.variables.index(v)))
    if var not in f.occurring():
        return poly_gcd(f, content(g, var))
    if var not in g.occurring():
        return poly_gcd(content(f, var), g)
    cf, cg = content(f, var), content(g, var)
    a, b = divide_exact(f, cf), divide_exact(g, cg)
    c = poly_gcd(cf, cg)
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while True:
        r = _prem(a, b, var)
        if r.is_zero():
            h = b
            break
        if r.degree_in(var) <= 0:
            h = LocalPolynomial.constant(f.variables, 1)
            break
        a, b = b, divide_exact(r, content(r, var))
    if h.degree_in(var) > 0:
        h = divide_exact(h, content(h, var))
    return (c * h).normalized()


def squarefree_part(f: LocalPolynomial) -> LocalPolynomial:
    """f / gcd(f, all partial derivatives): each factor kept exactly once."""
    if f.is_zero():
        raise ValueError("squarefree part of zero")
    g = f
    for v in f.variables:
        d = f.diff(v)
        if not d.is_zero():
            g = poly_gcd(g, d)
        if g.is_constant():
            return f.normalized()
    if g.is_constant():
        return f.normalized()
    return divide_exact(f, g).normalized()


# -- resultants -------------------------------------------------------------------------


def _bareiss_det(M: list[list[LocalPolynomial]], variables) -> LocalPolynomial:
    n = len(M)
    if n == 0:
        return LocalPolynomial.constant(variables, 1)
    M = [row[:] for row in M]
    sign = 1
    prev = LocalPolynomial.constant(variables, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return LocalPolynomial.zero(variables)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pk - M[i][k] * M[k][j]
                M[i][j] = divide_exact(num, prev) if not num.is_zero() else num
            M[i][k] = LocalPolynomial.zero(variables)
        prev = pk
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def _coeff_rows(f: LocalPolynomial, var: str, width: int, shifts: int):
    """Sylvester-style rows: var^k * f for k = shifts-1 .. 0, high to low."""
    d = f.degree_in(var)
    cf = f.coefficients_in(var)
    zero = LocalPolynomial.zero(f.variables)
    rows = []
    for k in range(shifts - 1, -1, -1):
        row = [zero] * width
        for deg, c in cf.items():
            # column index counts from the highest power width-1
            row[width - 1 - (deg + k)] = c
        rows.append(row)
    return rows, d


def resultant(f: LocalPolynomial, g: LocalPolynomial, var: str) -> LocalPolynomial:
    """Determinant of the Sylvester matrix of f, g as polynomials in var."""
    f._check(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    m, n = f.degree_in(var), g.degree_in(var)
    if m == 0 and n == 0:
        raise ValueError(f"both polynomials have degree 0 in {var}")
    if m == 0:
        return f.coefficients_in(var)[0] ** n
    if n == 0:
        return g.coefficients_in(var)[0] ** m
    width = m + n
    rf, _ = _coeff_rows(f, var, width, n)
    rg, _ = _coeff_rows(g, var, width, m)
    return _bareiss_det(rf + rg, f.variables)


def first_subresultant(
    f: LocalPolynomial, g: LocalPolynomial, var: str
) -> tuple[LocalPolynomial, LocalPolynomial]:
    """Coefficients (a, b) of the first subresultant a*var + b of f and g."""
    m, n = f.degree_in(var), g.degree_in(var)
    if m < n:
        f, g, m, n = g, f, n, m
    if n < 1:
        raise ValueError("first subresultant needs positive degrees")
    if n == 1:
        cg = g.coefficients_in(var)
        zero = LocalPolynomial.zero(f.variables)
        return cg.get(1, zero), cg.get(0, zero)
    width = m + n - 1
    rf, _ = _coeff_rows(f, var, width, n - 1)
    rg, _ = _coeff_rows(g, var, width, m - 1)
    rows = rf + rg  # (m+n-2) rows
    head = width - 2  # columns for var^(m+n-2) .. var^2

    def det_with(col):
        M = [r[:head] + [r[col]] for r in rows]
        return _bareiss_det(M, f.variables)

    return det_with(width - 2), det_with(width - 1)


# -- formatting ---------------------------------------------------------------------


def _mono_str(variables, e: Exp) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(f: LocalPolynomial) -> str:
    """Canonical parser-compatible string, terms in local order."""
    if f.is_zero():
        return "0"
    out = ""
    for e in sorted(f.terms, key=local_key):
        c = f.terms[e]
        mono = _mono_str(f.variables, e)
        neg = False
        if c.is_rational():
            q = c.to_fraction()
            neg = q < 0
            q = abs(q)
            cs = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            if mono:
                body = mono if q == 1 else f"{cs}*{mono}"
            else:
                body = cs
        else:
            cs = f"({c})"
            body = f"{cs}*{mono}" if mono else cs
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out
