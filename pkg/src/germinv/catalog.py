"""Built-in example germs: the S, B, C and H families and a corank-2 germ.

Each entry carries the irreducible factors of its double point curve so the
intersection numbers can be cross-checked pair by pair.
"""

from __future__ import annotations

from .errors import ResourceExceeded
from .expr import parse_poly
from .germ import Germ

FAMILIES = ("S", "B", "C", "H", "marar")
DEFAULT_RANGES = {"S": range(1, 7), "B": range(1, 7), "C": range(1, 7), "H": range(1, 5)}
MAX_K = 12


def _p(text: str):
    return parse_poly(text, ("s", "t"))


def _germ(name, phi, factors=(), **kw) -> Germ:
    return Germ(
        name,
        tuple(_p(x) for x in phi),
        factors=tuple(_p(f) for f in factors) or None,
        **kw,
    )


def family_S(k: int) -> Germ:
    """(s, t^2, t^3 + s^k t)."""
    if k % 2 == 0:
        n = k // 2
        factors = (f"t - i*s^{n}", f"t + i*s^{n}")
    else:
        factors = (f"t^2 + s^{k}",)
    return _germ(f"S_{k - 1}", ("s", "t^2", f"t^3 + s^{k}*t"), factors)


def family_B(k: int) -> Germ:
    """(s, t^2, s^2 t + t^(2k+1))."""
    return _germ(
        f"B_{k}", ("s", "t^2", f"s^2*t + t^{2 * k + 1}"), (f"s - i*t^{k}", f"s + i*t^{k}")
    )


def family_C(k: int) -> Germ:
    """(s, t^2, s t^3 + s^k t)."""
    m = k - 1
    if m == 0:
        rest = ()
    elif m % 2 == 0:
        rest = (f"t - i*s^{m // 2}", f"t + i*s^{m // 2}")
    else:
        rest = (f"t^2 + s^{m}",)
    return _germ(f"C_{k}", ("s", "t^2", f"s*t^3 + s^{k}*t"), ("s",) + rest)


def family_H(k: int) -> Germ:
    """(s, s t + t^(3k-1), t^3)."""
    e = 3 * k - 2
    return _germ(
        f"H_{k}",
        ("s", f"s*t + t^{3 * k - 1}", "t^3"),
        (f"s - zeta12^8*t^{e}", f"s - zeta12^4*t^{e}"),
    )


MARAR_FACTORS = ("s + t^2", "s^2 + t", "s + t", "s + zeta12^4*t", "s + zeta12^8*t")


def marar() -> Germ:
    """Corank-2 germ (s^2, t^2, s^3 + t^3 + s t) with d, T and vi supplied."""
    d = "*".join(f"({f})" for f in MARAR_FACTORS)
    return _germ(
        "marar",
        ("s^2", "t^2", "s^3 + t^3 + s*t"),
        MARAR_FACTORS,
        override_d=_p(d),
        override_T=1,
        override_pairing=(0, 1, 2, 3, 4),
        override_vi=(-4, -4, -4, -4, -4),
    )


_BUILDERS = {"S": family_S, "B": family_B, "C": family_C, "H": family_H}


def catalog_germ(family: str, k: int | None = None, allow_large: bool = False) -> Germ:
    if family == "marar":
        return marar()
    if family not in _BUILDERS:
        raise KeyError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if k is None or k < 1:
        raise ValueError(f"family {family} needs k >= 1")
    if k > MAX_K and not allow_large:
        raise ResourceExceeded(f"k = {k} exceeds {MAX_K}; pass --allow-large to go beyond")
    return _BUILDERS[family](k)


def catalog(family: str | None = None, k: int | None = None, allow_large: bool = False):
    """Catalog germs, optionally restricted to one family and one k."""
    fams = FAMILIES if family is None else (family,)
    out = []
    for fam in fams:
        if fam == "marar":
            out.append(marar())
        elif k is not None:
            out.append(catalog_germ(fam, k, allow_large))
        else:
            out.extend(catalog_germ(fam, kk) for kk in DEFAULT_RANGES[fam])
    return out
