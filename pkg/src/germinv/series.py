"""Truncated Laurent series in one variable with a tracked precision.

A ``TSeries`` stands for ``sum(c_e * tau^e) + O(tau^prec)``; ``prec`` is
``math.inf`` for series known exactly.  Every operation propagates the
precision, so an order read off a result is certified when it lies below
``prec``.
"""

from __future__ import annotations

import math
from typing import Mapping

from .cyclotomic import CyclotomicNumber, coerce

INF = math.inf


class TSeries:
    __slots__ = ("terms", "prec")

    def __init__(self, terms: Mapping[int, object] | None = None, prec: float = INF):
        out = {}
        for e, c in (terms or {}).items():
            if e >= prec:
                continue
            c = coerce(c)
            if not c.is_zero():
                out[e] = c
        self.terms = out
        self.prec = prec

    @classmethod
    def _raw(cls, terms: dict, prec: float) -> TSeries:
        s = cls.__new__(cls)
        s.terms = terms
        s.prec = prec
        return s

    @classmethod
    def monomial(cls, e: int, c=1, prec: float = INF) -> TSeries:
        return cls({e: c}, prec)

    @classmethod
    def constant(cls, c, prec: float = INF) -> TSeries:
        return cls({0: c}, prec)

    # -- queries --------------------------------------------------------------------

    def known_order(self) -> int | None:
        """Exponent of the lowest known nonzero term, or None."""
        return min(self.terms) if self.terms else None

    def valuation_bound(self) -> float:
        """A lower bound for the true order (exact when a term is known)."""
        o = self.known_order()
        return self.prec if o is None else o

    def is_exactly_zero(self) -> bool:
        return not self.terms and self.prec == INF

    def is_exact(self) -> bool:
        return self.prec == INF

    def coefficient(self, e: int) -> CyclotomicNumber:
        if e >= self.prec:
            raise ValueError(f"coefficient of tau^{e} unknown beyond precision {self.prec}")
        return self.terms.get(e, coerce(0))

    def truncated(self, prec: float) -> TSeries:
        p = min(prec, self.prec)
        return TSeries._raw({e: c for e, c in self.terms.items() if e < p}, p)

    # -- arithmetic -----------------------------------------------------------------

    def _lift(self, other) -> TSeries:
        if isinstance(other, TSeries):
            return other
        return TSeries.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        p = min(self.prec, other.prec)
        out = {e: c for e, c in self.terms.items() if e < p}
        for e, c in other.terms.items():
            if e >= p:
                continue
            w = out.get(e)
            w = c if w is None else w + c
            if w.is_zero():
                out.pop(e, None)
            else:
                out[e] = w
        return TSeries._raw(out, p)

    __radd__ = __add__

    def __neg__(self):
        return TSeries._raw({e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            c = coerce(other)
            if c.is_zero():
                return TSeries._raw({}, INF)
            return TSeries._raw({e: v * c for e, v in self.terms.items()}, self.prec)
        p = min(self.prec + other.valuation_bound(), other.prec + self.valuation_bound())
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= p:
                    continue
                w = out.get(e)
                out[e] = c1 * c2 if w is None else w + c1 * c2
        return TSeries._raw({e: c for e, c in out.items() if not c.is_zero()}, p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TSeries.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> TSeries:
        """Multiply by tau^k."""
        return TSeries._raw({e + k: c for e, c in self.terms.items()}, self.prec + k)

    def inverse(self) -> TSeries:
        """1/self as a Laurent series; needs a known leading term."""
        o = self.known_order()
        if o is None:
            raise ZeroDivisionError("series not known to be nonzero at this precision")
        unit = self.shift(-o)
        rel = unit.prec  # relative precision
        a0inv = unit.terms[0].inverse()
        out: dict = {}
        n = rel if rel != INF else None
        if n is None:
            if len(unit.terms) == 1:
                return TSeries._raw({-o: a0inv}, INF)
            raise ValueError("inverse of an exact non-monomial series needs a precision")
        for k in range(int(n)):
            acc = coerce(0)
            for j, a in unit.terms.items():
                if 0 < j <= k:
                    b = out.get(k - j)
                    if b is not None:
                        acc = acc + a * b
            v = (a0inv if k == 0 else -acc * a0inv)
            if not v.is_zero():
                out[k] = v
        return TSeries._raw(out, rel).shift(-o)

    def inverse_to(self, prec: int) -> TSeries:
        """Inverse of a unit series, computed modulo tau^prec."""
        return self.truncated(prec).inverse() if self.prec > prec else self.inverse()

    def __truediv__(self, other):
        if not isinstance(other, TSeries):
            return self * coerce(other).inverse()
        return self * other.inverse()

    def substitute_power(self, q: int) -> TSeries:
        """tau -> tau^q."""
        return TSeries._raw({e * q: c for e, c in self.terms.items()}, self.prec * q)

    def scale_variable(self, z) -> TSeries:
        """tau -> z * tau."""
        z = coerce(z)
        return TSeries._raw({e: c * z ** e for e, c in self.terms.items()}, self.prec)

    def compose(self, inner: TSeries) -> TSeries:
        """self(inner(tau)) for a power series self and inner of positive order."""
        if any(e < 0 for e in self.terms):
            raise ValueError("compose needs a power series on the outside")
        o = inner.valuation_bound()
        if o < 1:
            raise ValueError("inner series must have positive order")
        result = TSeries._raw({}, INF)
        power = TSeries.constant(1)
        last = 0
        for e in sorted(self.terms):
            power = power * inner ** (e - last)
            last = e
            result = result + power * self.terms[e]
        if self.prec != INF:
            result = result.truncated(self.prec * o)
        return result

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.prec == other.prec and self.terms == other.terms

    def __hash__(self):
        return hash((self.prec, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        body = " + ".join(f"({c})*tau^{e}" for e, c in sorted(self.terms.items())) or "0"
        tail = "" if self.prec == INF else f" + O(tau^{self.prec})"
        return f"TSeries({body}{tail})"


def evaluate_polynomial(f, values: Mapping[str, TSeries]) -> TSeries:
    """Substitute series for every variable of a LocalPolynomial."""
    names = f.variables
    cache: dict[tuple[int, int], TSeries] = {}

    def power(k: int, m: int) -> TSeries:
        if m == 0:
            return TSeries.constant(1)
        key = (k, m)
        if key not in cache:
            cache[key] = values[names[k]] if m == 1 else power(k, m - 1) * values[names[k]]
        return cache[key]

    result = TSeries._raw({}, INF)
    for e, c in f.terms.items():
        term = TSeries.constant(c)
        for k, m in enumerate(e):
            if m:
                term = term * power(k, m)
        result = result + term
    return result

