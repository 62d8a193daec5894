"""Germ definition files and the structured report document.

File syntax (``#`` starts a comment)::

    germ "B_2" {
      phi = ["s", "t^2", "s^2*t + t^5"]
      d = "..."                    # optional override
      T = 1                        # optional override
      pairing = [[1, 1], [2, 2]]   # optional, 1-based (i, sigma(i)) pairs
      vi = [-4, -4]                # optional per-component fixture
      factors = ["s", "t^2 + s"]   # optional irreducible factors of d
      conductor = 12               # optional base field Q(zeta_n)
    }
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from typing import Any

from .cyclotomic import DEFAULT_CONDUCTOR, format_number, max_conductor
from .errors import ParseError
from .expr import parse_poly
from .germ import Germ, InvariantReport
from .poly import format_poly

SCHEMA = 1
DISPLAY_TERMS = 6
KEYS = ("phi", "d", "T", "pairing", "vi", "factors", "conductor")

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)
    |(?P<str>"(?:[^"\\\n]|\\.)*")|(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)
    |(?P<punct>[{}\[\]=,])""",
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    value: Any
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos, line, col0 = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        col = pos - col0 + 1
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind == "str":
            out.append(_Tok("str", m.group()[1:-1].replace('\\"', '"'), line, col))
        elif kind == "int":
            out.append(_Tok("int", int(m.group()), line, col))
        elif kind in ("name", "punct"):
            out.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    return out


class _Reader:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0
        lines = text.count("\n") + 1
        self.end = _Tok("eof", None, lines, len(text.rsplit("\n", 1)[-1]) + 1)

    def peek(self) -> _Tok:
        return self.toks[self.k] if self.k < len(self.toks) else self.end

    def take(self) -> _Tok:
        t = self.peek()
        self.k += 1
        return t

    def expect(self, kind: str, value=None) -> _Tok:
        t = self.take()
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            got = "end of file" if t.kind == "eof" else repr(t.value)
            raise ParseError(f"expected {want!r}, found {got}", t.line, t.col)
        return t

    def value(self):
        t = self.peek()
        if t.kind in ("str", "int"):
            self.take()
            return t
        if t.kind == "punct" and t.value == "[":
            self.take()
            items = []
            if self.peek().value == "]":
                self.take()
                return _Tok("list", items, t.line, t.col)
            while True:
                items.append(self.value())
                nxt = self.take()
                if nxt.value == "]":
                    return _Tok("list", items, t.line, t.col)
                if nxt.value != ",":
                    raise ParseError("expected ',' or ']'", nxt.line, nxt.col)
        got = "end of file" if t.kind == "eof" else repr(t.value)
        raise ParseError(f"expected a value, found {got}", t.line, t.col)


def _poly(tok: _Tok, conductor: int, what: str):
    if tok.kind != "str":
        raise ParseError(f"{what} must be a quoted expression", tok.line, tok.col)
    return parse_poly(tok.value, ("s", "t"), conductor, tok.line, tok.col + 1)


def _int(tok: _Tok, what: str) -> int:
    if tok.kind != "int":
        raise ParseError(f"{what} must be an integer", tok.line, tok.col)
    return tok.value


def _list(tok: _Tok, what: str) -> list:
    if tok.kind != "list":
        raise ParseError(f"{what} must be a list", tok.line, tok.col)
    return tok.value


def _record(name: _Tok, fields: dict[str, _Tok], conductor: int) -> Germ:
    if "conductor" in fields:
        t = fields["conductor"]
        conductor = _int(t, "conductor")
        if not 1 <= conductor <= max_conductor():
            raise ParseError(f"conductor must lie in 1..{max_conductor()}", t.line, t.col)
    if "phi" not in fields:
        raise ParseError(f"germ {name.value!r} has no phi", name.line, name.col)
    phi_items = _list(fields["phi"], "phi")
    if len(phi_items) != 3:
        t = fields["phi"]
        raise ParseError(f"phi needs 3 components, got {len(phi_items)}", t.line, t.col)
    phi = []
    for tok in phi_items:
        f = _poly(tok, conductor, "phi component")
        if not f.constant_term().is_zero():
            raise ParseError("phi component does not vanish at the origin", tok.line, tok.col)
        phi.append(f)
    kw: dict[str, Any] = {"conductor": conductor}
    if "d" in fields:
        kw["override_d"] = _poly(fields["d"], conductor, "d")
    if "T" in fields:
        T = _int(fields["T"], "T")
        if T < 0:
            raise ParseError("T must be non-negative", fields["T"].line, fields["T"].col)
        kw["override_T"] = T
    if "vi" in fields:
        kw["override_vi"] = tuple(_int(x, "vi entry") for x in _list(fields["vi"], "vi"))
    if "factors" in fields:
        kw["factors"] = tuple(
            _poly(x, conductor, "factor") for x in _list(fields["factors"], "factors")
        )
    if "pairing" in fields:
        pairs = _list(fields["pairing"], "pairing")
        sigma: dict[int, int] = {}
        for p in pairs:
            items = _list(p, "pairing entry")
            if len(items) != 2:
                raise ParseError("pairing entries are [i, sigma(i)]", p.line, p.col)
            i, j = (_int(x, "branch index") for x in items)
            if i < 1 or j < 1:
                raise ParseError("branch indices start at 1", p.line, p.col)
            for a, b in ((i, j), (j, i)):
                if sigma.get(a - 1, b - 1) != b - 1:
                    raise ParseError(f"branch {a} paired twice", p.line, p.col)
                sigma[a - 1] = b - 1
        n = len(sigma)
        if sorted(sigma) != list(range(n)):
            t = fields["pairing"]
            raise ParseError("pairing must cover branches 1..n", t.line, t.col)
        kw["override_pairing"] = tuple(sigma[i] for i in range(n))
    return Germ(name.value, tuple(phi), **kw)


def parse_germ_file(text: str, conductor: int = DEFAULT_CONDUCTOR) -> list[Germ]:
    """All germ records of a file, with line:column diagnostics."""
    r = _Reader(text)
    germs = []
    while r.peek().kind != "eof":
        r.expect("name", "germ")
        name = r.expect("str")
        r.expect("punct", "{")
        fields: dict[str, _Tok] = {}
        while not (r.peek().kind == "punct" and r.peek().value == "}"):
            key = r.take()
            if key.kind != "name":
                got = "end of file" if key.kind == "eof" else repr(key.value)
                raise ParseError(f"expected a key or '}}', found {got}", key.line, key.col)
            if key.value not in KEYS:
                raise ParseError(
                    f"unknown key {key.value!r} (allowed: {', '.join(KEYS)})", key.line, key.col
                )
            if key.value in fields:
                raise ParseError(f"duplicate key {key.value!r}", key.line, key.col)
            r.expect("punct", "=")
            fields[key.value] = r.value()
            if r.peek().kind == "punct" and r.peek().value == ",":
                r.take()
        r.expect("punct", "}")
        germs.append(_record(name, fields, conductor))
    return germs


def format_germ(g: Germ) -> str:
    """A germ record that ``parse_germ_file`` reads back to an equal Germ."""

    def q(f) -> str:
        return '"' + format_poly(f) + '"'

    lines = [f'germ "{g.name}" {{', f"  phi = [{', '.join(q(f) for f in g.phi)}]"]
    if g.override_d is not None:
        lines.append(f"  d = {q(g.override_d)}")
    if g.override_T is not None:
        lines.append(f"  T = {g.override_T}")
    if g.override_pairing is not None:
        pairs = [f"[{i + 1}, {s + 1}]" for i, s in enumerate(g.override_pairing) if i <= s]
        lines.append(f"  pairing = [{', '.join(pairs)}]")
    if g.override_vi is not None:
        lines.append(f"  vi = [{', '.join(str(v) for v in g.override_vi)}]")
    if g.factors:
        lines.append(f"  factors = [{', '.join(q(f) for f in g.factors)}]")
    if g.conductor != DEFAULT_CONDUCTOR:
        lines.append(f"  conductor = {g.conductor}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- report document --------------------------------------------------------------------


def _tau(e: int) -> str:
    return "tau" if e == 1 else f"tau^{e}"


def describe_branch(br, terms: int = DISPLAY_TERMS) -> str:
    """Parametrization string showing at most ``terms`` coefficients."""
    x, y = ("t", "s") if br.swapped else ("s", "t")
    shown = br.series[:terms]
    body = " + ".join(f"({format_number(c)})*{_tau(e)}" for e, c in shown) or "0"
    if len(br.series) > terms or not br.exact:
        body += " + ..."
    return f"{x} = {_tau(br.ramification)}, {y} = {body}"


@dataclass
class ReportDocument:
    """JSON-compatible view of an InvariantReport; every number is an int."""

    name: str
    corank: int
    C: int
    T: int
    L: int
    d: str
    branches: list = field(default_factory=list)
    sigma: list = field(default_factory=list)
    components: list = field(default_factory=list)
    twisted: list = field(default_factory=list)
    intersection_matrix: list = field(default_factory=list)
    lambdas: list | None = None
    vi: list = field(default_factory=list)
    vi_sum: int = 0
    delta: list | None = None
    aN: list | None = None
    gluing: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    schema: int = SCHEMA

    @classmethod
    def from_report(cls, rep: InvariantReport, display_terms: int = DISPLAY_TERMS):
        dp = rep.dp
        branches = [
            {
                "index": k + 1,
                "ramification": br.ramification,
                "swapped": br.swapped,
                "exact": br.exact,
                "parametrization": describe_branch(br, display_terms),
            }
            for k, br in enumerate(dp.branches)
        ]
        return cls(
            name=rep.name,
            corank=rep.corank,
            C=rep.C,
            T=rep.T,
            L=rep.L,
            d=format_poly(rep.d),
            branches=branches,
            sigma=[s + 1 for s in dp.sigma],
            components=[[i + 1 for i in c] for c in dp.components],
            twisted=list(dp.twisted),
            intersection_matrix=[list(r) for r in dp.inter],
            lambdas=None if rep.lambdas is None else list(rep.lambdas),
            vi=list(rep.vi),
            vi_sum=rep.vi_sum,
            delta=None if rep.delta is None else list(rep.delta),
            aN=None if rep.aN is None else list(rep.aN),
            gluing=[dict(g) for g in rep.gluing],
            checks=dict(rep.checks),
            notes=list(rep.notes),
        )

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambda"] = out.pop("lambdas")
        return {"schema": out.pop("schema"), **out}

    @classmethod
    def from_dict(cls, doc: dict) -> ReportDocument:
        doc = dict(doc)
        if doc.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
        doc["lambdas"] = doc.pop("lambda", None)
        return cls(**doc)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))

    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if v is False]


def _fmt_list(xs) -> str:
    if xs is None:
        return "-"
    return ",".join("?" if x is None else str(x) for x in xs) or "-"


def table_row(doc: ReportDocument) -> str:
    """One line of key=value fields; parsed back by ``parse_table_row``."""
    kinds = ",".join("twisted" if t else "untwisted" for t in doc.twisted)
    fails = doc.failed_checks()
    fields = [
        doc.name,
        f"corank={doc.corank}",
        f"C={doc.C}",
        f"T={doc.T}",
        f"components={len(doc.components)}({kinds})" if kinds else "components=0",
        f"vi={_fmt_list(doc.vi)}",
        f"vi_sum={doc.vi_sum}",
        f"L={doc.L}",
        f"D={';'.join(_fmt_list(r) for r in doc.intersection_matrix) or '-'}",
        f"aN={_fmt_list(doc.aN)}",
        f"checks={'ok' if not fails else 'FAILED:' + ','.join(fails)}",
    ]
    return "  ".join(fields)


def parse_table_row(row: str) -> dict:
    parts = row.split()
    out = {"name": parts[0]}
    for p in parts[1:]:
        k, v = p.split("=", 1)
        out[k] = v
    return out
