"""Acceptance criteria 1-10, one test each; every test prints a PASS/FAIL line."""

from __future__ import annotations

import random
import time
from pathlib import Path

import pytest

from germinv import linking as lc
from germinv.catalog import DEFAULT_RANGES, catalog, catalog_germ
from germinv.cli import main
from germinv.expr import parse_poly
from germinv.fileformat import format_germ, parse_germ_file
from germinv.generators import random_zero_dimensional_ideal
from germinv.germ import analyze
from germinv.local import jet_codimension_oracle, local_codimension, stable_jet_codimension
from germinv.puiseux import INFINITE, order_along_branch, puiseux_branches
from germinv.selftest import linking_properties

GERMS = Path(__file__).resolve().parent.parent / "germs"


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, problems: list[str], detail: str = ""):
        status = "PASS" if not problems else "FAIL"
        line = f"criterion {number:>2} [{title}]: {status}"
        if detail:
            line += f"  ({detail})"
        with capsys.disabled():
            print("\n" + line)
            for p in problems[:10]:
                print(f"    - {p}")
        assert not problems, "; ".join(problems)

    return emit


def P(text):
    return parse_poly(text, ("s", "t"))


def timed_analyze(family, k):
    start = time.perf_counter()
    rep = analyze(catalog_germ(family, k))
    return rep, time.perf_counter() - start


def off_diagonal(M, i, k):
    return M[i][k] if i != k else None


def test_criterion_1_S_family(verdict):
    problems = []
    worst = 0.0
    for k in range(1, 7):
        rep, dt = timed_analyze("S", k)
        worst = max(worst, dt)
        tag = f"S_{k - 1}"
        if (rep.C, rep.T) != (k, 0):
            problems.append(f"{tag}: C, T = {rep.C}, {rep.T}")
        if rep.d != P(f"t^2 + s^{k}"):
            problems.append(f"{tag}: d = {rep.d}")
        comps, tw = rep.dp.components, rep.dp.twisted
        if k % 2:
            if tw != (True,) or rep.vi != (-k,):
                problems.append(f"{tag}: twisted={tw}, vi={rep.vi}")
        else:
            n = k // 2
            if tw != (False,) or len(comps[0]) != 2:
                problems.append(f"{tag}: expected one untwisted component, got {tw}")
            elif rep.dp.inter[0][1] != n:
                problems.append(f"{tag}: D1.D2 = {rep.dp.inter[0][1]}")
            if rep.lambdas != (-k, -k) or rep.vi != (-2 * k,):
                problems.append(f"{tag}: lambda={rep.lambdas}, vi={rep.vi}")
        if dt >= 10:
            problems.append(f"{tag}: {dt:.1f} s")
    verdict(1, "S family", problems, f"slowest germ {worst:.2f} s")


def test_criterion_2_B_family(verdict):
    problems = []
    worst = 0.0
    for k in range(1, 7):
        rep, dt = timed_analyze("B", k)
        worst = max(worst, dt)
        tag = f"B_{k}"
        if (rep.C, rep.T) != (2, 0):
            problems.append(f"{tag}: C, T = {rep.C}, {rep.T}")
        if rep.d != P(f"s^2 + t^{2 * k}"):
            problems.append(f"{tag}: d = {rep.d}")
        tw = rep.dp.twisted
        if k % 2:
            if tw != (False,) or rep.vi != (-2 * k - 2,):
                problems.append(f"{tag}: twisted={tw}, vi={rep.vi}")
        else:
            if tw != (True, True) or rep.vi != (-k - 1, -k - 1):
                problems.append(f"{tag}: twisted={tw}, vi={rep.vi}")
        if dt >= 10:
            problems.append(f"{tag}: {dt:.1f} s")
    verdict(2, "B family", problems, f"slowest germ {worst:.2f} s")


def _component_on_s_zero(rep):
    s = P("s")
    for j, comp in enumerate(rep.dp.components):
        if any(order_along_branch(s, rep.dp.branches[i]) == INFINITE for i in comp):
            return j
    return None


def test_criterion_3_C_family(verdict):
    problems = []
    worst = 0.0
    for k in range(1, 7):
        rep, dt = timed_analyze("C", k)
        worst = max(worst, dt)
        tag = f"C_{k}"
        if (rep.C, rep.T) != (k, 0):
            problems.append(f"{tag}: C, T = {rep.C}, {rep.T}")
        if rep.d != P(f"s*t^2 + s^{k}").normalized():
            problems.append(f"{tag}: d = {rep.d}")
        want_b = -2 * k if k % 2 else -k - 1
        a = _component_on_s_zero(rep)
        others = [j for j in range(len(rep.dp.components)) if j != a]
        if a is None or len(others) != 1:
            problems.append(
                f"{tag}: expected components A (s = 0) and B, got {len(rep.dp.components)} "
                f"component(s) with vi = {rep.vi}"
            )
        else:
            got = (rep.vi[a], rep.vi[others[0]])
            if got != (-3, want_b):
                problems.append(f"{tag}: (vi_A, vi_B) = {got}, expected {(-3, want_b)}")
        if dt >= 10:
            problems.append(f"{tag}: {dt:.1f} s")
    verdict(3, "C family", problems, f"slowest germ {worst:.2f} s")


def test_criterion_4_H_family(verdict):
    problems = []
    worst = 0.0
    for k in range(1, 5):
        rep, dt = timed_analyze("H", k)
        worst = max(worst, dt)
        tag = f"H_{k}"
        e = 3 * k - 2
        if (rep.C, rep.T) != (2, k - 1):
            problems.append(f"{tag}: C, T = {rep.C}, {rep.T}")
        if rep.d != P(f"(s - zeta12^8*t^{e})*(s - zeta12^4*t^{e})"):
            problems.append(f"{tag}: d = {rep.d}")
        if rep.dp.twisted != (False,) or rep.dp.inter[0][1] != e:
            problems.append(f"{tag}: twisted={rep.dp.twisted}, D={rep.dp.inter}")
        if rep.lambdas is not None or rep.vi != (-3 * k - 1,):
            problems.append(f"{tag}: vi={rep.vi} (lambda route {rep.lambdas})")
        if rep.L != 5 - 3 * k:
            problems.append(f"{tag}: L = {rep.L}")
        if dt >= 30:
            problems.append(f"{tag}: {dt:.1f} s")
    verdict(4, "H family", problems, f"slowest germ {worst:.2f} s")


def test_criterion_5_corank_two(verdict):
    problems = []
    start = time.perf_counter()
    g = catalog_germ("marar")
    rep = analyze(g)
    dt = time.perf_counter() - start
    if rep.corank != 2 or rep.C != 3 or rep.T != 1:
        problems.append(f"corank, C, T = {rep.corank}, {rep.C}, {rep.T}")
    if rep.dp.twisted != (True,) * 5:
        problems.append(f"twisted flags {rep.dp.twisted}")
    M = rep.dp.inter
    if any(M[i][k] != 1 for i in range(5) for k in range(5) if i != k):
        problems.append(f"intersection matrix {M}")
    if rep.vi_sum != -20:
        problems.append(f"vi_sum = {rep.vi_sum}")
    if rep.vi != (-4,) * 5 or sum(rep.vi) != rep.vi_sum or rep.checks["eq1"] is not True:
        problems.append(f"fixture vi = {rep.vi} inconsistent with vi_sum")
    if dt >= 30:
        problems.append(f"{dt:.1f} s")
    verdict(5, "corank-2 germ", problems, f"{dt:.2f} s")


def _eq1_problems(rep) -> list[str]:
    M = rep.dp.inter
    n = len(M)
    total = sum(M[i][k] for i in range(n) for k in range(n) if i != k)
    out = []
    if rep.vi_sum != -total - rep.C + 3 * rep.T:
        out.append(f"{rep.name}: vi_sum {rep.vi_sum} != {-total - rep.C + 3 * rep.T}")
    if all(v is not None for v in rep.vi) and sum(rep.vi) != rep.vi_sum:
        out.append(f"{rep.name}: sum of vi {sum(rep.vi)} != vi_sum {rep.vi_sum}")
    return out


def test_criterion_6_sum_identity(verdict, tmp_path, capsys):
    problems = []
    germs = catalog()
    for g in germs:
        problems += _eq1_problems(analyze(g))
    user_files = sorted(GERMS.glob("*.germ"))
    for path in user_files:
        for g in parse_germ_file(path.read_text()):
            problems += _eq1_problems(analyze(g))
    combined = tmp_path / "catalog.germ"
    combined.write_text("".join(format_germ(g) for g in germs))
    for path in [combined, *user_files]:
        code = main(["check", str(path)])
        if code != 0:
            problems.append(f"check {path.name} exited {code}")
    capsys.readouterr()
    verdict(6, "vertical index sum", problems, f"{len(germs)} catalog germs, {len(user_files)} files")


def test_criterion_7_local_algebra_oracle(verdict):
    rng = random.Random(20261017)
    problems = []
    codims = []
    for k in range(200):
        nvars = 2 + k % 3
        I = random_zero_dimensional_ideal(rng, nvars, max_degree=6, max_codim=40)
        got = local_codimension(I)
        want = stable_jet_codimension(I)
        codims.append(got)
        if got != want:
            problems.append(f"ideal {k}: standard basis {got}, oracle {want}")
        elif nvars == 2 and jet_codimension_oracle(I, 2 * got + 2) != got:
            problems.append(f"ideal {k}: oracle at cap 2c+2 disagrees")
        if got > 40:
            problems.append(f"ideal {k}: codimension {got} exceeds 40")
    verdict(7, "local algebra oracle", problems, f"200 ideals, codimension up to {max(codims)}")


def test_criterion_8_intersection_oracle(verdict):
    problems = []
    pairs = 0
    for g in catalog():
        if not g.factors or len(g.factors) < 2:
            continue
        branches = [puiseux_branches(f) for f in g.factors]
        for a, fa in enumerate(g.factors):
            for b, fb in enumerate(g.factors):
                if a == b:
                    continue
                pairs += 1
                route = sum(order_along_branch(fb, br) for br in branches[a])
                colength = local_codimension([fa, fb])
                if route != colength:
                    problems.append(f"{g.name}: ({fa}).({fb}) Puiseux {route}, colength {colength}")
    verdict(8, "intersection oracle", problems, f"{pairs} ordered factor pairs")


def test_criterion_9_linking_properties(verdict):
    start = time.perf_counter()
    problems = linking_properties(random.Random(9), 10_000)
    dt = time.perf_counter() - start
    if dt >= 5:
        problems.append(f"took {dt:.2f} s")
    verdict(9, "linking calculus", problems, f"10000 instances in {dt:.2f} s")


def test_criterion_10_round_trip(verdict):
    problems = []
    rng = random.Random(10)
    for g in catalog():
        rep = analyze(g)
        if rep.delta is None:
            problems.append(f"{rep.name}: vertical indices unknown, no Delta")
            continue
        link = lc.AbstractLink.build(rep.dp.inter, rep.dp.sigma, rep.delta)
        expected_L = rep.C - 3 * rep.T
        if lc.L1(link) != expected_L or lc.L2(link) != -expected_L:
            problems.append(f"{rep.name}: L1, L2 = {lc.L1(link)}, {lc.L2(link)}; C - 3T = {expected_L}")
        for _ in range(5):
            f = lc.random_framing(rng, link)
            if lc.L_v(link, f) != -expected_L:
                problems.append(f"{rep.name}: L_v = {lc.L_v(link, f)} for {f.a}")
                break
        v = lc.milnor_framing(link, rep.vi)
        cs = [lc.c_value(link, j, v) for j in range(len(link.orbits))]
        if any(cs):
            problems.append(f"{rep.name}: Milnor framing has c = {cs}")
        keys = lc.nearby_class(link, v)
        want = tuple(
            rep.delta[j] // 2 if link.twisted(j) else rep.delta[j] for j in range(len(link.orbits))
        )
        if keys != want:
            problems.append(f"{rep.name}: nearby keys {keys}, expected {want}")
    verdict(10, "framing round trip", problems, f"{len(catalog())} catalog germs")


def test_default_ranges_cover_the_criteria():
    assert list(DEFAULT_RANGES["S"]) == list(range(1, 7))
    assert list(DEFAULT_RANGES["H"]) == list(range(1, 5))
