"""The fourteen acceptance criteria at their stated tolerances.

Each test records its cases through ``conftest.record``; the terminal
summary prints one pass/fail line per criterion.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import record
from mixedmeans import convexity as cx
from mixedmeans import geometry as geo
from mixedmeans import series as ps
from mixedmeans import verify as vf
from mixedmeans import weights as wt
from mixedmeans.convexity import Verdict
from mixedmeans.exact import Poly
from mixedmeans.verify import Criterion, Status

AREA_EX = vf.AREA_EXAMPLE
LENGTH_EX = vf.LENGTH_EXAMPLE
FAMILY = {
    "z": ps.monomial(0, 1, 1),
    "z^2": ps.monomial(0, 1, 2),
    "z^3": ps.monomial(0, 1, 3),
    "z+z^2/2": AREA_EX,
    "(z+2)^3": LENGTH_EX,
}
GRID50 = np.linspace(0.02, 0.98, 50)


def _closed_form_cases(kind, f, forms):
    bad = []
    for beta, form in forms.items():
        p = wt.WeightParams(1, beta)
        for r in GRID50:
            got = wt.weighted_mean(kind, f, p, r, fast_path=False).value
            ref = form(r)
            if abs(got - ref) > 1e-9 * abs(ref):
                bad.append(f"beta={beta} r={r:.3g} rel err {abs(got - ref) / ref:.2e}")
    return bad


def test_c01_area_example_closed_forms():
    bad = _closed_form_cases("area", AREA_EX, {
        1: lambda r: (12 - 3 * r**2 - 2 * r**4) / (6 * (2 - r**2)),
        0: lambda r: math.pi * (12 * r**2 - 4 * r**4 - 3 * r**6) / (12 * (2 - r**2)),
    })
    record(1, not bad, "; ".join(bad[:3]))
    assert not bad


def test_c02_length_example_closed_forms():
    bad = _closed_form_cases("length", LENGTH_EX, {
        1: lambda r: (24 - 9 * r**2 - 2 * r**4) / (2 - r**2),
        0: lambda r: 24 * math.pi * (140 * r - 63 * r**3 - 15 * r**5) / (105 * (2 - r**2)),
    })
    record(2, not bad, "; ".join(bad[:3]))
    assert not bad


G_POLYS = {
    ("area", 0): [48, -288, 232, -72, 15],
    ("area", 1): [72, -192, 147, -48, 7],
    ("length", 0): [3920, 0, -33600, 0, 28098, 0, -8400, 0, 1395],
    ("length", 1): [144, -384, 297, -96, 13],
}
G_ENDS = {("area", 0): (48, -65), ("area", 1): (72, -14), ("length", 0): (3920, -8587), ("length", 1): (144, -26)}


@pytest.mark.parametrize("key", list(G_POLYS))
def test_c03_exact_numerators(key):
    g = cx.sign_numerator(cx.d_notation_rational(vf.EXAMPLE_H[key]))
    ok = g == Poly([Fraction(c) for c in G_POLYS[key]])
    record(3, ok, f"{key}: got {g}")
    assert ok


@pytest.mark.parametrize("key", list(G_POLYS))
def test_c04_single_certified_sign_change(key):
    g = Poly(G_POLYS[key])
    ch = cx.sign_changes(g, 0, 1)
    ends = (g(Fraction(0)), g(Fraction(1)))
    ok = len(ch) == 1 and ch[0].monotone and ends == G_ENDS[key]
    record(4, ok, f"{key}: {len(ch)} changes, ends {ends}")
    assert ok


@pytest.mark.parametrize("alpha", [-5.0, -4.0, -3.5])
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_c05_delta_limit(lam, alpha):
    x = 1 - 1e-4
    got = cx.delta(lam, alpha, x)
    lim = cx.delta_limit(lam, alpha)
    ok = abs(got - lim) <= 5e-3
    record(5, ok, f"(lam={lam}, alpha={alpha}): |Delta-limit|={abs(got - lim):.3g}")
    assert ok, f"Delta={got}, limit={lim}"


def test_c06_monotone_growth():
    bad = []
    for name, f in FAMILY.items():
        for alpha in (-3, -1, 0, 1, 2):
            for beta in (0, 0.5, 1):
                p = wt.WeightParams(alpha, beta)
                for kind in ("area", "length"):
                    vals = [m.value for m in wt.weighted_means_along(kind, f, p, GRID50)]
                    d = np.diff(vals)
                    if name == "z" and beta == 1:
                        if np.max(np.abs(d)) > 1e-12:
                            bad.append(f"{kind} {name} a={alpha} b={beta} not flat")
                    elif d.min() < -1e-10:
                        bad.append(f"{kind} {name} a={alpha} b={beta} drop {d.min():.2e}")
    record(6, not bad, "; ".join(bad[:3]))
    assert not bad


def test_c07_schwarz_trichotomy():
    bad = []
    for alpha, beta in ((1, 1), (0, 0.5), (-2, 0), (-3, 1)):
        p = wt.WeightParams(alpha, beta)
        for name, f in {**FAMILY, "3z^2": ps.monomial(0, 3, 2)}.items():
            for kind in ("area", "length"):
                grid = [0.2, 0.5, 0.8] if f.is_monomial() else [0.5]
                rep = vf.check_schwarz(kind, f, p, grid)
                if rep.status is not Status.PASS:
                    bad.append(f"{kind} {name} a={alpha} b={beta}")
    record(7, not bad, "; ".join(bad[:3]))
    assert not bad


def test_c08_limits_beta_one():
    bad = []
    r = 1e-3
    for alpha in (-3, 0, 1):
        p = wt.WeightParams(alpha, 1)
        for name, f in FAMILY.items():
            d0 = abs(f[1])
            for kind, lim in (("area", d0 * d0), ("length", d0)):
                got = wt.weighted_mean(kind, f, p, r).value
                if abs(got - lim) > 1e-4:
                    bad.append(f"{kind} {name} a={alpha}: {got:.6g} vs {lim}")
    record(8, not bad, "beta=1: " + "; ".join(bad[:3]))
    assert not bad


def test_c08_limits_beta_half():
    # stated bound: beta = 0.5 means are <= 1e-3 at r = 1e-3
    bad = []
    r = 1e-3
    for alpha in (-3, 0, 1):
        p = wt.WeightParams(alpha, 0.5)
        for name, f in FAMILY.items():
            for kind in ("area", "length"):
                got = wt.weighted_mean(kind, f, p, r).value
                if got > 1e-3:
                    bad.append(f"{kind} {name} a={alpha}: {got:.3g}")
    record(8, not bad, "beta=0.5: " + "; ".join(bad[:3]) + (f" (+{len(bad) - 3} more)" if len(bad) > 3 else ""))
    assert not bad


def test_c09_alpha_monotonicity():
    grid = [-0.5, 0, 0.5, 1, 2]
    bad = []
    for name in ("z^2", "z+z^2/2"):
        for beta in (0, 0.5, 1):
            for kind in ("area", "length"):
                rep = vf.check_alpha_decrease(kind, FAMILY[name], beta, grid)
                if rep.status is not Status.PASS:
                    bad.append(f"{kind} {name} b={beta}")
    for kind in ("area", "length"):
        rep = vf.check_alpha_decrease(kind, FAMILY["z"], 1.0, grid)
        if rep.status is not Status.PASS or "constant" not in rep.witnesses[0].input:
            bad.append(f"{kind} z b=1 not constant")
    record(9, not bad, "; ".join(bad))
    assert not bad


def test_c10_convexity_regimes():
    bad = []
    grid = vf.SCAN_GRID
    for alpha in (-3, -2, -1, 0):
        p = wt.WeightParams(alpha, 1)
        for n in range(1, 6):
            v = cx.loglog_convexity_scan(wt.moment_mean("area", ps.monomial(0, 1, n), p), grid).verdict
            if v is not Verdict.CONVEX:
                bad.append(f"z^{n} a={alpha}: {v.value}")
        for name in ("z+z^2/2", "(z+2)^3"):
            mm = wt.moment_mean("area", FAMILY[name], p, order=512)
            v = cx.loglog_convexity_scan(mm, vf.SERIES_SCAN_GRID).verdict
            if v is not Verdict.CONVEX:
                bad.append(f"{name} a={alpha}: {v.value}")
    mm = wt.moment_mean("area", FAMILY["z^2"], wt.WeightParams(1, 1))
    rep = cx.loglog_convexity_scan(mm, list(np.linspace(0.9, 0.999, 12)))
    if rep.verdict is Verdict.CONVEX or rep.certified_signs[-1] != -1:
        bad.append(f"alpha=1 z^2 not certified negative: {rep.verdict.value}")
    if not (cx.delta_limit(1, -4) < 0 < cx.delta_limit(3, -4)):
        bad.append("alpha=-4 witnesses")
    record(10, not bad, "; ".join(bad[:3]))
    assert not bad


def test_c11_counterexample_verdicts():
    bad = []
    for key, h in vf.EXAMPLE_H.items():
        v = cx.loglog_convexity_scan(h, np.linspace(0.01, 0.99, 99)).verdict
        kind, beta = key
        f = AREA_EX if kind == "area" else LENGTH_EX
        vm = cx.loglog_convexity_scan(wt.moment_mean(kind, f, wt.WeightParams(1, beta)),
                                      np.linspace(0.01, 0.99, 99)).verdict
        if v is not Verdict.NEITHER or vm is not Verdict.NEITHER:
            bad.append(f"{key}: exact {v.value}, mean {vm.value}")
    record(11, not bad, "; ".join(bad))
    assert not bad


def test_c12_univalence_criteria():
    a = vf.check_univalence(Criterion.WEDGE, AREA_EX, samples=10_000)
    b = vf.check_univalence(Criterion.NEHARI, LENGTH_EX, samples=10_000)
    c = vf.check_univalence(Criterion.WEDGE, ps.construct([0, 1, 2]), samples=10_000)
    ok = a.status is Status.PASS and b.status is Status.PASS and c.status is Status.FAIL and bool(c.failures)
    record(12, ok, f"{a.notes} | {b.notes} | {c.notes}")
    assert ok


def test_c13_closed_path_vs_quadrature():
    bad = []
    for n in (1, 2, 3):
        for alpha in (-2.5, 0.0, 1.5):
            for r in (0.2, 0.5, 0.9):
                for beta in (0.0, 1.0):
                    p = wt.WeightParams(alpha, beta)
                    for kind in ("area", "length"):
                        a = wt.weighted_mean_monomial(kind, n, p, r).value
                        b = wt.weighted_mean(kind, ps.monomial(0, 1, n), p, r, fast_path=False).value
                        if abs(a - b) > 1e-9 * abs(a):
                            bad.append(f"{kind} n={n} a={alpha} r={r} b={beta}")
    record(13, not bad, "; ".join(bad[:3]))
    assert not bad


def test_c14_raster_vs_dirichlet():
    bad = []
    for r in (0.3, 0.6, 0.9):
        ras = geo.area_image_raster(AREA_EX, r, cells_per_axis=512)
        d = geo.area_dirichlet(AREA_EX, r)
        if abs(ras.value - d.value) > ras.error_bound + d.error_bound:
            bad.append(f"r={r}: {ras.value} vs {d.value} (bound {ras.error_bound:.3g})")
    record(14, not bad, "; ".join(bad))
    assert not bad
