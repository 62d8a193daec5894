"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as an integer coefficient vector in the power basis
1, z, ..., z^(phi(n)-1) of Q(zeta_n) together with one positive common
denominator.  The representation is reduced modulo the n-th cyclotomic
polynomial and made canonical at construction, so equality is a plain
tuple comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import ExtensionUnsupported

DEFAULT_CONDUCTOR = 12
_max_conductor = 120


def max_conductor() -> int:
    return _max_conductor


def set_max_conductor(n: int) -> None:
    global _max_conductor
    if n < 1:
        raise ValueError("conductor bound must be positive")
    _max_conductor = n


def _check_conductor(n: int) -> None:
    if n > _max_conductor:
        raise ExtensionUnsupported(
            f"conductor {n} exceeds the configured maximum {_max_conductor}"
        )


# -- cyclotomic polynomial tables -------------------------------------------


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), b monic."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    assert not any(a), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^e mod Phi_n as integer vectors for e = 0 .. n-1."""
    phi_n = cyclotomic_poly(n)
    deg = len(phi_n) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi_n[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_table(n: int) -> tuple[int, ...]:
    """Trace Q(zeta_n)/Q of each basis power (Ramanujan sums)."""
    out = []
    for k in range(_phi(n)):
        g = math.gcd(n, k)
        m = n // g
        out.append(_mobius(m) * _phi(n) // _phi(m))
    return tuple(out)


def _mobius(m: int) -> int:
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce a long coefficient vector modulo Phi_n."""
    deg = _phi(n)
    if len(vec) <= deg:
        return vec + [0] * (deg - len(vec))
    table = _power_table(n)
    out = vec[:deg]
    for e in range(deg, len(vec)):
        c = vec[e]
        if c:
            row = table[e % n]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


# -- the element type --------------------------------------------------------

Scalar = Union[int, Fraction, "CyclotomicNumber"]


class CyclotomicNumber:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = list(num)
        if len(num) != _phi(n):
            num = _reduce(num, n)
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        if not any(num):
            den = 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # constructors
    @classmethod
    def from_rational(cls, q, n: int = DEFAULT_CONDUCTOR) -> CyclotomicNumber:
        q = Fraction(q)
        num = [0] * _phi(n)
        num[0] = q.numerator
        return cls(n, num, q.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1, conductor: int | None = None) -> CyclotomicNumber:
        """zeta_n^k, embedded in Q(zeta_conductor) when given."""
        N = n if conductor is None else conductor
        if N % n:
            N = math.lcm(N, n)
        _check_conductor(N)
        e = (k * (N // n)) % N
        return cls(N, list(_power_table(N)[e]), 1)

    @classmethod
    def i(cls, conductor: int = DEFAULT_CONDUCTOR) -> CyclotomicNumber:
        return cls.zeta(4, 1, conductor)

    @classmethod
    def rho(cls, conductor: int = DEFAULT_CONDUCTOR) -> CyclotomicNumber:
        """Primitive cube root of unity -1/2 + (sqrt 3 / 2) i."""
        return cls.zeta(3, 1, conductor)

    # inspection
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def promote(self, N: int) -> CyclotomicNumber:
        """Embed into Q(zeta_N); N must be a multiple of n."""
        if N == self.n:
            return self
        if N % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) into Q(zeta_{N})")
        _check_conductor(N)
        step = N // self.n
        table = _power_table(N)
        deg = _phi(N)
        out = [0] * deg
        for k, c in enumerate(self.num):
            if c:
                row = table[(k * step) % N]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return CyclotomicNumber(N, out, self.den)

    # coercion helpers
    def _coerce(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber] | None:
        if isinstance(other, CyclotomicNumber):
            if other.n == self.n:
                return self, other
            N = math.lcm(self.n, other.n)
            return self.promote(N), other.promote(N)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNumber.from_rational(other, self.n)
        return None

    # arithmetic
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            return CyclotomicNumber(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CyclotomicNumber(
            a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.n, [-x for x in self.num], self.den)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicNumber(self.n, [x * other for x in self.num], self.den)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if b.is_rational():
            a, b = b, a
        if a.is_rational():
            c = a.num[0]
            return CyclotomicNumber(b.n, [x * c for x in b.num], a.den * b.den)
        deg = len(a.num)
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(a.n, _reduce(prod, a.n), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_n)")
        if self.is_rational():
            return CyclotomicNumber.from_rational(Fraction(self.den, self.num[0]), self.n)
        # extended Euclid in Q[x]: u*a + v*Phi = 1
        a = [Fraction(c) for c in self.num]
        while a and a[-1] == 0:
            a.pop()
        m = [Fraction(c) for c in cyclotomic_poly(self.n)]
        u = _xgcd_inverse(a, m)
        lcd = 1
        for c in u:
            lcd = lcd * c.denominator // math.gcd(lcd, c.denominator)
        num = [int(c * lcd) for c in u]
        # (a/den)^-1 = den * a^-1
        return CyclotomicNumber(self.n, [x * self.den for x in num], lcd)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_n)")
            q = Fraction(other)
            return CyclotomicNumber(
                self.n, [x * q.denominator for x in self.num], self.den * q.numerator
            )
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison / hashing
    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        # normalized trace does not depend on the conductor used
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        tr = sum(c * t for c, t in zip(self.num, _trace_table(self.n)))
        return hash(("cyc", Fraction(tr, self.den * _phi(self.n))))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.n}, {list(self.num)}, {self.den})"

    def __str__(self):
        return format_number(self)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    return _poly_trim(out)


def _xgcd_inverse(a, m):
    """u with u*a = 1 mod m (both over Q, gcd assumed 1)."""
    r0, r1 = m, a
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    # r0 is a nonzero constant
    c = r0[0]
    _, rem = _poly_divmod(s0, m) if len(s0) >= len(m) else (None, s0)
    return [x / c for x in rem]


# -- convenience -------------------------------------------------------------


def coerce(x, n: int = DEFAULT_CONDUCTOR) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    return CyclotomicNumber.from_rational(x, n)


def is_zero(a: CyclotomicNumber) -> bool:
    return a.is_zero()


def field_arith(a: Scalar, b: Scalar, op: str) -> CyclotomicNumber:
    """Dispatch helper: op is one of add, sub, mul, div."""
    a = coerce(a)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _iroot(m: int, r: int) -> int | None:
    """Exact integer r-th root of m >= 0, or None."""
    if m < 2:
        return m
    x = round(m ** (1.0 / r))
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand ** r == m:
            return cand
    # float fallback failed for huge m: Newton iteration
    x = 1 << ((m.bit_length() + r - 1) // r)
    while True:
        y = ((r - 1) * x + m // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    return x if x ** r == m else None


def _legendre(a: int, p: int) -> int:
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_integer(m: int) -> CyclotomicNumber:
    """Square root of a positive integer inside the smallest cyclotomic field.

    Squarefree parts are assembled from quadratic Gauss sums; the resulting
    conductor must stay within the configured maximum.
    """
    if m <= 0:
        raise ValueError("sqrt_integer expects a positive integer")
    square, sf = 1, 1
    p = 2
    rest = m
    while p * p <= rest and p <= _max_conductor:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            sf *= p
        p += 1
    if rest > 1:
        r = _iroot(rest, 2)
        if r is not None:
            square *= r
        elif rest <= _max_conductor:
            sf *= rest
        else:
            raise ExtensionUnsupported(f"sqrt({m}) needs a conductor beyond {_max_conductor}")
    val = CyclotomicNumber.from_rational(square, 1)
    q = sf
    p = 2
    while q > 1:
        if q % p == 0:
            q //= p
            val = val * _sqrt_prime(p)
        p += 1
    return val


def _sqrt_prime(p: int) -> CyclotomicNumber:
    if p == 2:
        return CyclotomicNumber.zeta(8, 1) + CyclotomicNumber.zeta(8, 7)
    _check_conductor(p if p % 4 == 1 else 4 * p)
    g = CyclotomicNumber.from_rational(0, p)
    for a in range(1, p):
        g = g + CyclotomicNumber.zeta(p, a) * _legendre(a, p)
    if p % 4 == 1:
        return g
    return -(CyclotomicNumber.i(4 * p) * g)


def as_root_of_unity_multiple(a: CyclotomicNumber) -> tuple[Fraction, int] | None:
    """Write a = q * zeta_n^j with q rational, if possible; returns (q, j)."""
    if a.is_zero():
        return None
    n = a.n
    for j in range(n):
        b = a * CyclotomicNumber.zeta(n, -j, n)
        if b.is_rational():
            return b.to_fraction(), j
    return None


def nth_root(a: Scalar, r: int) -> CyclotomicNumber:
    """One r-th root of a, promoting the conductor when needed.

    Supported: a = q * (root of unity) with q rational whose |q|^(1/r) is
    rational, or r = 2 (via Gauss sums).  Anything else raises
    ExtensionUnsupported.
    """
    a = coerce(a)
    if r == 1 or a.is_zero():
        return a
    rep = as_root_of_unity_multiple(a)
    if rep is None:
        raise ExtensionUnsupported(f"cannot extract a root of order {r} from {a}")
    q, j = rep
    n = a.n
    # a = |q| * zeta_{2n}^(2j + n*[q<0])
    e = 2 * j + (n if q < 0 else 0)
    unit_root = CyclotomicNumber.zeta(2 * n * r, e)
    q = abs(q)
    num_r = _iroot(q.numerator, r)
    den_r = _iroot(q.denominator, r)
    if num_r is not None and den_r is not None:
        mag = Fraction(num_r, den_r)
        return _shrink(unit_root * mag, n)
    if r == 2:
        mag = sqrt_integer(q.numerator * q.denominator) / q.denominator
        return _shrink(unit_root * mag, n)
    raise ExtensionUnsupported(f"no root of order {r} of {q} lies in a cyclotomic field")


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def _shrink(x: CyclotomicNumber, prefer: int) -> CyclotomicNumber:
    """Re-express x in the smallest Q(zeta_m), prefer | m | x.n, containing it."""
    for m in _divisors(x.n):
        if m % prefer or m >= x.n:
            continue
        y = _descend(x, m)
        if y is not None:
            return y
    return x


def _descend(x: CyclotomicNumber, m: int) -> CyclotomicNumber | None:
    """Return x as an element of Q(zeta_m) (m | x.n) or None if not there."""
    deg = _phi(m)
    # solve sum c_k * embed(zeta_m^k) = x by matching coordinates
    basis = [CyclotomicNumber.zeta(m, k, x.n) for k in range(deg)]
    rows = [[Fraction(v, 1) for v in b.num] for b in basis]  # deg x phi(N)
    target = [Fraction(v, x.den) for v in x.num]
    # Gaussian elimination on the transpose system
    ncol = len(target)
    aug = [[rows[k][c] for k in range(deg)] + [target[c]] for c in range(ncol)]
    piv_cols = []
    r = 0
    for col in range(deg):
        pr = next((i for i in range(r, ncol) if aug[i][col] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(ncol):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, ncol):
        if aug[i][-1] != 0:
            return None
    coeffs = [Fraction(0)] * deg
    for i, col in enumerate(piv_cols):
        coeffs[col] = aug[i][-1]
    lcd = 1
    for c in coeffs:
        lcd = math.lcm(lcd, c.denominator)
    return CyclotomicNumber(m, [int(c * lcd) for c in coeffs], lcd)


def roots_of_unity(r: int, conductor: int = DEFAULT_CONDUCTOR) -> list[CyclotomicNumber]:
    """All r-th roots of unity, in Q(zeta_lcm(conductor, r))."""
    N = math.lcm(conductor, r)
    return [CyclotomicNumber.zeta(r, k, N) for k in range(r)]


# -- formatting ----------------------------------------------------------------


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_number(a: CyclotomicNumber) -> str:
    """Human and parser readable form: rationals plainly, Q(i) as a + b*i,
    everything else as a sum over powers of zeta<n>."""
    if a.is_rational():
        return _frac_str(a.to_fraction())
    if a.n % 4 == 0:
        try:
            gi = _descend(a, 4)
        except ExtensionUnsupported:
            gi = None
        if gi is not None:
            re, im = gi.coefficients()
            parts = []
            if re:
                parts.append(_frac_str(re))
            if im == 1:
                parts.append("i")
            elif im == -1:
                parts.append("-i")
            else:
                parts.append(f"{_frac_str(im)}*i")
            return _join_terms(parts)
    parts = []
    for k, c in enumerate(a.coefficients()):
        if not c:
            continue
        if k == 0:
            parts.append(_frac_str(c))
            continue
        z = f"zeta{a.n}" + (f"^{k}" if k > 1 else "")
        if c == 1:
            parts.append(z)
        elif c == -1:
            parts.append("-" + z)
        else:
            parts.append(f"{_frac_str(c)}*{z}")
    return _join_terms(parts)


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out
