"""Runnable checks for the monotonicity, Schwarz-type, limit, univalence
and log-convexity statements about the weighted means.

Every check returns a :class:`CheckReport`.  A report fails only when some
witness misses its tolerance, and failing witnesses are kept so the
offending input can be replayed.  Strict monotonicity is checked on grids
with slack ``1e-12``: sub-slack flatness is indistinguishable from strict
growth at this level.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import convexity as cx
from . import geometry as geo
from . import series as ps
from . import weights as wt
from .errors import DomainError, MixedMeansError
from .exact import Poly, RationalFunc, sign_changes
from .geometry import Kind

EQUALITY_RTOL = 1e-9
MONOTONE_SLACK = 1e-10
STRICT_SLACK = 1e-12


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Witness:
    input: str
    expected: Any
    got: Any
    tolerance: float
    relation: str = "=="

    @property
    def deviation(self) -> float:
        e, g = self.expected, self.got
        if isinstance(e, (list, tuple)) or isinstance(g, (list, tuple)):
            if len(e) != len(g):
                return math.inf
            return max((abs(Fraction(a) - Fraction(b)) for a, b in zip(e, g)), default=0.0)
        if isinstance(e, bool) or isinstance(g, bool) or isinstance(e, str) or isinstance(g, str):
            return 0.0 if e == g else math.inf
        return abs(float(e) - float(g))

    @property
    def ok(self) -> bool:
        e, g, t = self.expected, self.got, self.tolerance
        if self.relation == ">=":
            return float(g) >= float(e) - t
        if self.relation == "<=":
            return float(g) <= float(e) + t
        if self.relation == ">":
            return float(g) > float(e) + t
        if self.relation == "<":
            return float(g) < float(e) - t
        return self.deviation <= t

    def to_dict(self):
        def conv(v):
            if isinstance(v, (list, tuple)):
                return [conv(x) for x in v]
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, (np.floating, np.integer)):
                return v.item()
            if isinstance(v, float) and not math.isfinite(v):
                return repr(v)
            return v
        return {"input": self.input, "expected": conv(self.expected), "got": conv(self.got),
                "tolerance": self.tolerance, "relation": self.relation}


@dataclass
class CheckReport:
    check_id: str
    status: Status
    witnesses: list[Witness] = field(default_factory=list)
    notes: str = ""

    @property
    def failures(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.ok]

    def to_dict(self, max_witnesses: int | None = None):
        ws = self.witnesses
        if max_witnesses is not None and self.status is Status.PASS:
            ws = ws[:max_witnesses]
        elif max_witnesses is not None:
            ws = (self.failures + [w for w in ws if w.ok])[:max(max_witnesses, len(self.failures))]
        return {"check_id": self.check_id, "status": self.status.value,
                "n_witnesses": len(self.witnesses), "witnesses": [w.to_dict() for w in ws],
                "notes": self.notes}


def _finish(check_id, witnesses, notes="", strict_fail_notes=()):
    status = Status.PASS if all(w.ok for w in witnesses) else Status.FAIL
    if strict_fail_notes:
        status = Status.FAIL
        notes = "; ".join([notes, *strict_fail_notes]).strip("; ")
    return CheckReport(check_id, status, list(witnesses), notes)


def _skip(check_id, notes):
    return CheckReport(check_id, Status.SKIPPED, [], notes)


def _trivial(f: ps.PowerSeries, beta: float) -> bool:
    """Maps for which the means are constant in r: constants, and linear maps at beta = 1."""
    return f.is_constant() or (beta == 1.0 and f.is_linear())


def _fmt(v) -> str:
    return f"{v:.6g}"


# --- Schwarz-type bounds ---------------------------------------------------

def _coefficient_bound(kind, f, n, beta):
    an = abs(f[n])
    if kind is Kind.AREA:
        return math.pi ** (1 - beta) * an * an, n - beta
    return (2 * math.pi) ** (1 - beta) * an, (n - beta) / 2


def check_schwarz(kind, f: ps.PowerSeries, params: wt.WeightParams, r_grid: Sequence[float],
                  check_id: str | None = None) -> CheckReport:
    """``coef(a_n) <= mean * nu / int t^(...) dmu`` with equality iff ``f`` is a monomial."""
    kind = Kind.parse(kind)
    cid = check_id or f"mean_schwarz.{kind.value}"
    n = f.leading_index()
    if n is None:
        return _skip(cid, "constant map")
    bound, lam = _coefficient_bound(kind, f, n, params.beta)
    mono = f.is_monomial()
    ws = []
    for r in r_grid:
        x = r * r
        m = wt.weighted_mean(kind, f, params, r, fast_path=False).value
        got = m * wt.f_zero(params.alpha, x) / (1.0 if lam == 0 else wt.f_lambda(lam, params.alpha, x) / 1.0) \
            if lam != 0 else m
        tol = EQUALITY_RTOL * bound
        if mono:
            ws.append(Witness(f"r={_fmt(r)} equality", bound, got, tol, "=="))
        else:
            ws.append(Witness(f"r={_fmt(r)} strict", bound, got, tol, ">"))
    return _finish(cid, ws, f"n={n}, {'monomial: equality expected' if mono else 'strict inequality expected'}")


def check_coefficient_schwarz(f: ps.PowerSeries, r_grid: Sequence[float],
                              check_id: str = "coefficient_schwarz", length: bool = True) -> CheckReport:
    """``pi r^(2n) |a_n|^2 <= A(f,r)`` and ``2 pi r^n |a_n| <= L(f,r)``, equality iff monomial."""
    n = f.leading_index()
    if n is None:
        return _skip(check_id, "constant map")
    mono = f.is_monomial()
    an = abs(f[n])
    ws = []
    for r in r_grid:
        pairs = [("area", math.pi * r ** (2 * n) * an * an, geo.area(f, r).value, 1e-12)]
        if length:
            pairs.append(("length", 2 * math.pi * r ** n * an, geo.length_boundary(f, r).value, 1e-12))
        for name, lo, val, slack in pairs:
            if mono:
                ws.append(Witness(f"{name} r={_fmt(r)} equality", lo, val, 1e-10, "=="))
            else:
                ws.append(Witness(f"{name} r={_fmt(r)} bound", lo, val, slack, ">="))
                ws.append(Witness(f"{name} r={_fmt(r)} strict", lo, val, EQUALITY_RTOL * lo, ">"))
    return _finish(check_id, ws, f"n={n}")


# --- monotonicity and limits -------------------------------------------------

def check_ratio_monotone(kind, f: ps.PowerSeries, beta: float, r_grid: Sequence[float],
                         check_id: str | None = None) -> CheckReport:
    """``r -> Phi(f, r)`` increases, strictly unless ``f`` is trivial for ``beta``."""
    kind = Kind.parse(kind)
    cid = check_id or f"ratio_monotone.{kind.value}"
    vals = [geo.mixed_ratio(kind, f, r, beta).value for r in r_grid]
    return _monotone_witnesses(cid, r_grid, vals, _trivial(f, beta))


def _monotone_witnesses(cid, grid, vals, trivial, notes=""):
    ws = []
    for r0, r1, v0, v1 in zip(grid, grid[1:], vals, vals[1:]):
        d = v1 - v0
        tag = f"[{_fmt(r0)},{_fmt(r1)}]"
        if trivial:
            ws.append(Witness(f"{tag} flat", 0.0, d, STRICT_SLACK, "=="))
        else:
            ws.append(Witness(f"{tag} nondecreasing", 0.0, d, MONOTONE_SLACK, ">="))
            ws.append(Witness(f"{tag} strict", STRICT_SLACK, d, 0.0, ">"))
    return _finish(cid, ws, notes or ("trivial map: constant expected" if trivial else "strictly increasing expected"))


def check_monotone(kind, f: ps.PowerSeries, params: wt.WeightParams, r_grid: Sequence[float],
                   check_id: str | None = None) -> CheckReport:
    kind = Kind.parse(kind)
    cid = check_id or f"mean_monotone.{kind.value}"
    vals = [m.value for m in wt.weighted_means_along(kind, f, params, r_grid)]
    return _monotone_witnesses(cid, list(r_grid), vals, _trivial(f, params.beta))


def check_limit_at_zero(kind, f: ps.PowerSeries, params: wt.WeightParams,
                        radii: Sequence[float] = tuple(10.0 ** -k for k in range(2, 11)),
                        tol: float = 1e-3, check_id: str | None = None) -> CheckReport:
    """The means tend to ``|f'(0)|^2`` (area) or ``|f'(0)|`` (length) at beta = 1, else to 0.

    Checked as a shrinking error along ``radii`` ending below ``tol``
    (relative to ``max(1, limit)``).
    """
    kind = Kind.parse(kind)
    cid = check_id or f"mean_limit_zero.{kind.value}"
    lim = geo.phi_at_zero(kind, f, params.beta)
    errs = [abs(wt.weighted_mean(kind, f, params, r).value - lim) for r in radii]
    ws = []
    for r0, r1, e0, e1 in zip(radii, radii[1:], errs, errs[1:]):
        ws.append(Witness(f"err r={_fmt(r1)} <= err r={_fmt(r0)}", e0, e1, 1e-15, "<="))
    ws.append(Witness(f"r={_fmt(radii[-1])}", lim, lim + errs[-1], tol * max(1.0, abs(lim)), "=="))
    return _finish(cid, ws, f"limit={_fmt(lim)}")


def _phi_bounded_near_one(kind, f, beta):
    tail = [0.9, 0.99, 0.999, 1 - 1e-6]
    vals = [geo.mixed_ratio(kind, f, r, beta).value for r in tail]
    ok = all(math.isfinite(v) for v in vals) and vals[-1] <= 2 * vals[-2] + 1e-12
    return ok, vals[-1]


def check_lipschitz(kind, f: ps.PowerSeries, params: wt.WeightParams,
                    pair_grid: Sequence[tuple[float, float]], check_id: str | None = None) -> CheckReport:
    """``0 <= (mean(s)-mean(r)) / (log nu(s) - log nu(r)) <= Phi(s) - Phi(0)``."""
    kind = Kind.parse(kind)
    cid = check_id or f"mean_lipschitz.{kind.value}"
    ok, _ = _phi_bounded_near_one(kind, f, params.beta)
    if not ok:
        return _skip(cid, "ratio not bounded along the tail toward r=1")
    phi0 = geo.phi_at_zero(kind, f, params.beta)
    ws = []
    for r, s in pair_grid:
        mr = wt.weighted_mean(kind, f, params, r).value
        ms = wt.weighted_mean(kind, f, params, s).value
        q = (ms - mr) / (math.log(wt.nu_alpha(params.alpha, s)) - math.log(wt.nu_alpha(params.alpha, r)))
        cap = geo.mixed_ratio(kind, f, s, params.beta).value - phi0
        tag = f"(r,s)=({_fmt(r)},{_fmt(s)})"
        ws.append(Witness(f"{tag} ratio >= 0", 0.0, q, MONOTONE_SLACK, ">="))
        ws.append(Witness(f"{tag} ratio <= Phi(s)-Phi(0)", cap, q, 1e-8, "<="))
    return _finish(cid, ws)


# --- the endpoint r = 1 --------------------------------------------------------

def check_alpha_decrease(kind, f: ps.PowerSeries, beta: float, alpha_grid: Sequence[float],
                         check_id: str | None = None) -> CheckReport:
    """``alpha -> mean(f, 1)`` decreases strictly on ``(-1, inf)`` unless ``f`` is trivial."""
    kind = Kind.parse(kind)
    cid = check_id or f"alpha_decrease.{kind.value}"
    alphas = list(alpha_grid)
    if any(a <= -1 for a in alphas) or alphas != sorted(alphas):
        raise DomainError("alpha grid must be ascending and > -1")
    vals = [wt.mean_at_one(kind, f, wt.WeightParams(a, beta)).value for a in alphas]
    trivial = _trivial(f, beta)
    ws = []
    for a0, a1, v0, v1 in zip(alphas, alphas[1:], vals, vals[1:]):
        tag = f"alpha {_fmt(a0)}->{_fmt(a1)}"
        if trivial:
            ws.append(Witness(f"{tag} constant", v0, v1, MONOTONE_SLACK, "=="))
        else:
            ws.append(Witness(f"{tag} decreasing", v0, v1, MONOTONE_SLACK, "<"))
    return _finish(cid, ws, "values: " + ", ".join(_fmt(v) for v in vals))


def check_sup_at_one(kind, f: ps.PowerSeries, params: wt.WeightParams, r_grid: Sequence[float],
                     check_id: str | None = None) -> CheckReport:
    """For alpha > -1: ``mean(r) <= mean(1)`` with equality everywhere iff ``f`` is trivial."""
    kind = Kind.parse(kind)
    cid = check_id or f"sup_at_one.{kind.value}"
    top = wt.mean_at_one(kind, f, params).value
    trivial = _trivial(f, params.beta)
    ws = []
    for r in r_grid:
        m = wt.weighted_mean(kind, f, params, r).value
        rel = "==" if trivial else "<"
        ws.append(Witness(f"r={_fmt(r)}", top, m, EQUALITY_RTOL * max(1.0, top), rel))
    return _finish(cid, ws, f"mean(1)={_fmt(top)}")


def check_sup_divergent_weight(kind, f: ps.PowerSeries, params: wt.WeightParams,
                               r_grid: Sequence[float] = (0.5, 0.9, 0.99, 0.999, 0.9999, 1 - 1e-6),
                               rel_gap: float = 1e-3, check_id: str | None = None) -> CheckReport:
    """For alpha <= -1: the means climb to ``Phi(f, 1)``, which is their supremum."""
    kind = Kind.parse(kind)
    cid = check_id or f"sup_divergent_weight.{kind.value}"
    if params.alpha > -1:
        raise DomainError("needs alpha <= -1")
    try:
        wt.mean_at_one(kind, f, params)
        raised = False
    except DomainError:
        raised = True
    phi1 = geo._mixed_ratio(kind, f, 1.0, params.beta).value
    vals = [m.value for m in wt.weighted_means_along(kind, f, params, r_grid)]
    ws = [Witness("mean_at_one rejects alpha<=-1", True, raised, 0.0)]
    for r, v in zip(r_grid, vals):
        ws.append(Witness(f"r={_fmt(r)} below Phi(1)", phi1, v, EQUALITY_RTOL * max(1.0, phi1), "<="))
    ws.append(Witness(f"r={_fmt(r_grid[-1])} close to Phi(1)", phi1, vals[-1], rel_gap * max(1.0, phi1), "=="))
    return _finish(cid, ws, f"Phi(1)={_fmt(phi1)}")


# --- geometry side conditions ----------------------------------------------------

def check_isoperimetric(f: ps.PowerSeries, r_grid: Sequence[float],
                        check_id: str = "isoperimetric") -> CheckReport:
    ws = []
    for r in r_grid:
        pa = geo.mixed_ratio(Kind.AREA, f, r, 1.0).value
        pl = geo.mixed_ratio(Kind.LENGTH, f, r, 1.0).value
        ws.append(Witness(f"r={_fmt(r)} Phi_A <= Phi_L^2", pl * pl, pa, 1e-9, "<="))
    return _finish(check_id, ws)


def check_raster_area(f, r_grid: Sequence[float], cells_per_axis: int = 512,
                      check_id: str = "raster_vs_dirichlet") -> CheckReport:
    """Image-set area on a grid agrees with the Dirichlet area (univalent ``f``)."""
    ws = []
    for r in r_grid:
        ras = geo.area_image_raster(f, r, cells_per_axis)
        d = geo.area_dirichlet(f, r)
        ws.append(Witness(f"r={_fmt(r)}", d.value, ras.value, ras.error_bound + d.error_bound))
    return _finish(check_id, ws)


# --- univalence -----------------------------------------------------------------

class Criterion(enum.Enum):
    WEDGE = "wedge"
    NEHARI = "nehari"


def disk_samples(samples: int = 10_000, radius: float = 1 - 1e-3) -> np.ndarray:
    """Deterministic quasi-uniform points of the disk (sunflower spiral)."""
    k = np.arange(samples)
    rho = radius * np.sqrt((k + 0.5) / samples)
    golden = math.pi * (3 - math.sqrt(5))
    return rho * np.exp(1j * golden * k)


def _higher_derivs(ev: geo.DiskEvaluator, z):
    if len(ev.derivs) >= 2:
        return ev.derivs[0](z), ev.derivs[1](z)
    h = 1e-4
    fp, fm, f0 = ev.eval_deriv(z + h), ev.eval_deriv(z - h), ev.eval_deriv(z)
    return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)


def check_univalence(criterion, f, samples: int = 10_000, check_id: str | None = None,
                     max_witnesses: int = 5) -> CheckReport:
    """Sufficient univalence criteria sampled over the disk.

    ``WEDGE``: ``f(0) = f'(0) - 1 = 0`` and ``|z^2 f'/f^2 - 1| < 1``.
    ``NEHARI``: ``|S(f)(z)| <= 2 / (1 - |z|^2)^2`` for the Schwarzian ``S``.
    """
    criterion = criterion if isinstance(criterion, Criterion) else Criterion(str(criterion).lower())
    cid = check_id or f"univalence.{criterion.value}"
    if samples < 1000:
        raise DomainError("use at least 1000 samples")
    ev = geo.as_evaluator(f)
    z = disk_samples(samples)
    if criterion is Criterion.WEDGE:
        f0, d0 = complex(ev.eval(0.0)), complex(ev.eval_deriv(0.0))
        if abs(f0) > 1e-12 or abs(d0 - 1) > 1e-12:
            w = Witness("normalization f(0)=0, f'(0)=1", [0.0, 1.0], [abs(f0), abs(d0)], 1e-12)
            return CheckReport(cid, Status.FAIL, [w], "normalization violated")
        fz = ev.eval(z)
        stat = np.abs(z * z * ev.eval_deriv(z) / (fz * fz) - 1.0)
        bound = np.ones_like(stat)
        bad = ~(stat < bound)
    else:
        d1 = ev.eval_deriv(z)
        d2, d3 = _higher_derivs(ev, z)
        stat = np.abs(d3 / d1 - 1.5 * (d2 / d1) ** 2)
        bound = 2.0 / (1.0 - np.abs(z) ** 2) ** 2
        bad = ~(stat <= bound)
    idx = np.flatnonzero(bad)
    ws = []
    for i in idx[:max_witnesses]:
        ws.append(Witness(f"z={complex(z[i]):.6g}", float(bound[i]), float(stat[i]), 0.0, "<"))
    margin = float(np.min(bound - stat))
    notes = f"{idx.size} violations in {samples} samples; min margin {margin:.6g}"
    if idx.size == 0:
        i = int(np.argmin(bound - stat))
        ws.append(Witness(f"tightest z={complex(z[i]):.6g}", float(bound[i]), float(stat[i]), 0.0,
                          "<" if criterion is Criterion.WEDGE else "<="))
    return _finish(cid, ws, notes)


# --- D-notation properties --------------------------------------------------------

def check_d_substitution(maps: dict[str, Callable], grid: Sequence[float], tol: float = 1e-6,
                         check_id: str = "dnotation_substitution") -> CheckReport:
    """Log-log convexity of ``F(x)`` and of ``F(x^2)`` agree."""
    ws = []
    for name, F in maps.items():
        v1 = cx.loglog_convexity_scan(F, grid, tol).verdict
        v2 = cx.loglog_convexity_scan(lambda x, F=F: F(x * x), grid, tol).verdict
        ws.append(Witness(name, v1.value, v2.value, 0.0))
    return _finish(check_id, ws)


def check_d_equivalence(maps: dict[str, Callable], xs: Sequence[float], step: float = 1e-3,
                        tol: float = 1e-4, check_id: str = "dnotation_equivalence") -> CheckReport:
    """``x D(F)(x)`` equals the second difference of ``log F`` against ``log x``."""
    ws = []
    for name, F in maps.items():
        for x in xs:
            y = math.log(x)
            g = [math.log(F(math.exp(y + k * step))) for k in (-1, 0, 1)]
            second = (g[0] - 2 * g[1] + g[2]) / step ** 2
            ws.append(Witness(f"{name} x={_fmt(x)}", second, x * cx.d_notation_numeric(F, x), tol))
    return _finish(check_id, ws)


def check_d_superposition(terms: Sequence[tuple[float, float]], grid: Sequence[float],
                          check_id: str = "dnotation_superposition") -> CheckReport:
    """A positive combination of log-log convex terms is log-log convex."""
    F = lambda x: sum(c * x ** k for c, k in terms)
    rep = cx.loglog_convexity_scan(F, grid, tol=1e-6)
    return _finish(check_id, [Witness(str(list(terms)), "convex", rep.verdict.value, 0.0)])


# --- log-convexity regimes ------------------------------------------------------------

SCAN_GRID = tuple(np.concatenate([np.linspace(0.01, 0.95, 48), [0.97, 0.98, 0.99, 0.995, 0.999]]))
SERIES_SCAN_GRID = tuple(np.linspace(0.01, 0.98, 50))


def _lambda(kind, n, beta):
    return n - beta if kind is Kind.AREA else (n - beta) / 2


def check_convexity_regimes(kind, beta: float, univalent_maps: dict[str, ps.PowerSeries] | None = None,
                            n_max: int = 5, check_id: str | None = None,
                            divergent_alpha: float = -4.0,
                            middle_alphas: Sequence[float] = (-3.0, -2.0, -1.0, 0.0),
                            positive_alphas: Sequence[float] = (0.5, 1.0, 2.0),
                            tol: float = 1e-8) -> CheckReport:
    """The three alpha regimes for log-log convexity of the monomial means.

    * ``alpha < -3``: a monomial witness whose ``Delta`` limit at ``x = 1``
      is negative (not convex) and one where it is positive (not concave).
    * ``-3 <= alpha <= 0`` (beta = 1 only): the means of ``z^n`` and of the
      given univalent maps scan convex.
    * ``alpha > 0``: ``Delta(lambda, x) < 0`` close to ``x = 1`` for every
      monomial with ``lambda > 0``.
    """
    kind = Kind.parse(kind)
    cid = check_id or f"convexity_regimes.{kind.value}.beta{beta:g}"
    ws, notes = [], []
    a = divergent_alpha
    x_near = 1 - 1e-6
    # not convex: z for beta < 1, z^2 for beta = 1
    n_neg = 2 if beta == 1.0 else 1
    lam = _lambda(kind, n_neg, beta)
    ws.append(Witness(f"(i) alpha={a:g} n={n_neg} limit<0", 0.0, cx.delta_limit(lam, a), 0.0, "<"))
    ws.append(Witness(f"(i) alpha={a:g} n={n_neg} Delta(x={x_near})<0", 0.0, cx.delta(lam, a, x_near), tol, "<"))
    n_pos = next(n for n in range(1, 100) if _lambda(kind, n, beta) > -2 - a)
    lam = _lambda(kind, n_pos, beta)
    ws.append(Witness(f"(i) alpha={a:g} n={n_pos} limit>0", 0.0, cx.delta_limit(lam, a), 0.0, ">"))
    ws.append(Witness(f"(i) alpha={a:g} n={n_pos} Delta(x={x_near})>0", 0.0, cx.delta(lam, a, x_near), tol, ">"))

    if beta == 1.0:
        for alpha in middle_alphas:
            p = wt.WeightParams(alpha, 1.0)
            for n in range(1, n_max + 1):
                mm = wt.moment_mean(kind, ps.monomial(0, 1, n), p)
                rep = cx.loglog_convexity_scan(mm, SCAN_GRID, tol)
                worst = min(v for _, v in rep.grid)
                ws.append(Witness(f"(ii) alpha={alpha:g} z^{n} verdict (min indicator {worst:.3g})",
                                  "convex", rep.verdict.value, 0.0))
            for name, f in (univalent_maps or {}).items():
                mm = wt.moment_mean(kind, f, p, order=512)
                rep = cx.loglog_convexity_scan(mm, SERIES_SCAN_GRID, tol)
                worst = min(v for _, v in rep.grid)
                ws.append(Witness(f"(ii) alpha={alpha:g} {name} verdict (min indicator {worst:.3g})",
                                  "convex", rep.verdict.value, 0.0))
    else:
        notes.append("regime (ii) concerns beta=1 only")

    for alpha in positive_alphas:
        for n in range(1, n_max + 1):
            lam = _lambda(kind, n, beta)
            if lam == 0:
                notes.append(f"alpha={alpha:g} n={n}: mean is constant (lambda=0), log-log linear")
                continue
            for x in (0.99, 0.999):
                ws.append(Witness(f"(iii) alpha={alpha:g} n={n} Delta(x={x})<0", 0.0,
                                  cx.delta(lam, alpha, x), tol, "<"))
    return _finish(cid, ws, "; ".join(notes))


# --- the two worked examples ------------------------------------------------------------

AREA_EXAMPLE = ps.construct([0, 1, 0.5])
LENGTH_EXAMPLE = ps.construct([8, 12, 6, 1])


def _area_example_closed(beta, r):
    if beta == 0:
        return math.pi * (12 * r**2 - 4 * r**4 - 3 * r**6) / (12 * (2 - r**2))
    return (12 - 3 * r**2 - 2 * r**4) / (6 * (2 - r**2))


def _length_example_closed(beta, r):
    if beta == 0:
        return 24 * math.pi * (140 * r - 63 * r**3 - 15 * r**5) / (105 * (2 - r**2))
    return (24 - 9 * r**2 - 2 * r**4) / (2 - r**2)


# h_beta: the mean up to a constant, as a rational function of x (x = r^2, or r for length beta=0)
EXAMPLE_H = {
    ("area", 0): RationalFunc.of([0, 12, -4, -3], [2, -1]),
    ("area", 1): RationalFunc.of([12, -3, -2], [2, -1]),
    ("length", 0): RationalFunc.of([0, 140, 0, -63, 0, -15], [2, 0, -1]),
    ("length", 1): RationalFunc.of([24, -9, -2], [2, -1]),
}
EXAMPLE_G = {
    ("area", 0): [48, -288, 232, -72, 15],
    ("area", 1): [72, -192, 147, -48, 7],
    ("length", 0): [3920, 0, -33600, 0, 28098, 0, -8400, 0, 1395],
    ("length", 1): [144, -384, 297, -96, 13],
}
EXAMPLE_G_ENDPOINTS = {
    ("area", 0): (48, -65), ("area", 1): (72, -14),
    ("length", 0): (3920, -8587), ("length", 1): (144, -26),
}


def reproduce_examples(grid_points: int = 50) -> list[CheckReport]:
    """Full pipeline for the two counterexamples at alpha = 1, beta in {0, 1}."""
    reports = [
        check_univalence(Criterion.WEDGE, AREA_EXAMPLE, check_id="example.area.univalence"),
        check_univalence(Criterion.NEHARI, LENGTH_EXAMPLE, check_id="example.length.univalence"),
    ]
    r_grid = np.linspace(0.02, 0.98, grid_points)
    for kind, f, closed in (("area", AREA_EXAMPLE, _area_example_closed),
                            ("length", LENGTH_EXAMPLE, _length_example_closed)):
        for beta in (0, 1):
            p = wt.WeightParams(1.0, beta)
            ws = []
            for r in r_grid:
                m = wt.weighted_mean(kind, f, p, r, fast_path=False).value
                c = closed(beta, r)
                ws.append(Witness(f"r={_fmt(r)}", c, m, EQUALITY_RTOL * abs(c)))
            reports.append(_finish(f"example.{kind}.closed_form.beta{beta}", ws))

            key = (kind, beta)
            g = cx.sign_numerator(cx.d_notation_rational(EXAMPLE_H[key]))
            reports.append(_finish(f"example.{kind}.numerator.beta{beta}",
                                   [Witness("D-notation numerator", EXAMPLE_G[key], list(g.int_coeffs()), 0.0)],
                                   str(g)))

            gp = Poly(EXAMPLE_G[key])
            ch = sign_changes(gp, 0, 1)
            e0, e1 = EXAMPLE_G_ENDPOINTS[key]
            ws = [Witness("g(0)", e0, int(gp(Fraction(0))), 0.0),
                  Witness("g(1)", e1, int(gp(Fraction(1))), 0.0),
                  Witness("sign changes in (0,1)", 1, len(ch), 0.0),
                  Witness("crossing certified unique", True, all(c.monotone for c in ch), 0.0)]
            loc = ", ".join(f"[{float(c.lo):.12f}, {float(c.hi):.12f}]" for c in ch)
            reports.append(_finish(f"example.{kind}.sign_change.beta{beta}", ws, f"root in {loc}"))

            exact_rep = cx.loglog_convexity_scan(EXAMPLE_H[key], np.linspace(0.01, 0.99, 99))
            mm = wt.moment_mean(kind, f, p)
            num_rep = cx.loglog_convexity_scan(mm, np.linspace(0.01, 0.99, 99))
            reports.append(_finish(f"example.{kind}.verdict.beta{beta}", [
                Witness("exact scan of h", "neither", exact_rep.verdict.value, 0.0),
                Witness("analytic scan of the mean", "neither", num_rep.verdict.value, 0.0)]))
    m0 = _area_example_closed(1, 1e-8)
    reports.append(_finish("example.area.limit_at_zero",
                           [Witness("closed form at r->0 vs |f'(0)|^2", 1.0, m0, 1e-12)]))
    return reports


# --- the default suite ---------------------------------------------------------------------

def standard_maps() -> dict[str, ps.PowerSeries]:
    return {
        "z": ps.monomial(0, 1, 1),
        "z^2": ps.monomial(0, 1, 2),
        "z^3": ps.monomial(0, 1, 3),
        "z+z^2/2": AREA_EXAMPLE,
        "(z+2)^3": LENGTH_EXAMPLE,
    }


UNIVALENT = {"z", "z+z^2/2", "(z+2)^3"}


def default_suite() -> list[Callable[[], CheckReport | list[CheckReport]]]:
    """Deferred checks making up the default verification run."""
    maps = standard_maps()
    r50 = list(np.linspace(0.02, 0.98, 50))
    r10 = list(np.linspace(0.05, 0.95, 10))
    jobs: list[Callable] = []
    add = jobs.append

    extra = {"3z^2": ps.monomial(0, 3, 2), "z^2+z^3": ps.construct([0, 0, 1, 1]), "1+2z^3": ps.monomial(1, 2, 3)}
    for name, f in {**maps, **extra}.items():
        length_ok = f.is_monomial() or name in UNIVALENT
        add(lambda f=f, name=name, lo=length_ok: check_coefficient_schwarz(
            f, r10, f"coefficient_schwarz.{name}", length=lo))
    for name in sorted(UNIVALENT):
        add(lambda name=name: check_isoperimetric(maps[name], list(np.linspace(0.04, 0.98, 20)),
                                                  f"isoperimetric.{name}"))
    add(lambda: check_raster_area(AREA_EXAMPLE, [0.3, 0.6, 0.9], 512, "raster_vs_dirichlet.z+z^2/2"))

    for name, f in maps.items():
        for kind in ("area", "length"):
            for beta in (0.0, 0.5, 1.0):
                add(lambda f=f, k=kind, b=beta, name=name: check_ratio_monotone(
                    k, f, b, r50, f"ratio_monotone.{k}.{name}.beta{b:g}"))
                add(lambda f=f, k=kind, b=beta, name=name: check_limit_at_zero(
                    k, f, wt.WeightParams(0.0, b), check_id=f"mean_limit_zero.{k}.{name}.beta{b:g}"))
                for alpha in (-3.0, -1.0, 0.0, 1.0, 2.0):
                    p = wt.WeightParams(alpha, beta)
                    add(lambda f=f, k=kind, p=p, name=name: check_monotone(
                        k, f, p, r50, f"mean_monotone.{k}.{name}.a{p.alpha:g}.b{p.beta:g}"))
                add(lambda f=f, k=kind, b=beta, name=name: check_alpha_decrease(
                    k, f, b, [-0.5, 0.0, 0.5, 1.0, 2.0], f"alpha_decrease.{k}.{name}.beta{b:g}"))
            for alpha, beta in ((1.0, 1.0), (0.0, 0.5), (-2.0, 0.0)):
                p = wt.WeightParams(alpha, beta)
                add(lambda f=f, k=kind, p=p, name=name: check_schwarz(
                    k, f, p, [0.3, 0.5, 0.7, 0.9], f"mean_schwarz.{k}.{name}.a{p.alpha:g}.b{p.beta:g}"))
                add(lambda f=f, k=kind, p=p, name=name: check_lipschitz(
                    k, f, p, [(0.2, 0.5), (0.3, 0.7), (0.5, 0.9), (0.2, 0.9)],
                    f"mean_lipschitz.{k}.{name}.a{p.alpha:g}.b{p.beta:g}"))
                if alpha > -1:
                    add(lambda f=f, k=kind, p=p, name=name: check_sup_at_one(
                        k, f, p, [0.3, 0.6, 0.9], f"sup_at_one.{k}.{name}.a{p.alpha:g}.b{p.beta:g}"))
            for alpha in (-3.0, -2.0):
                p = wt.WeightParams(alpha, 1.0)
                add(lambda f=f, k=kind, p=p, name=name: check_sup_divergent_weight(
                    k, f, p, check_id=f"sup_divergent_weight.{k}.{name}.a{p.alpha:g}"))

    add(lambda: check_univalence(Criterion.WEDGE, AREA_EXAMPLE, check_id="univalence.wedge.z+z^2/2"))
    add(lambda: check_univalence(Criterion.NEHARI, LENGTH_EXAMPLE, check_id="univalence.nehari.(z+2)^3"))
    add(lambda: _expect_violation(ps.construct([0, 1, 2]), "univalence.wedge.control.z+2z^2"))

    h0, h1 = EXAMPLE_H[("area", 0)], EXAMPLE_H[("area", 1)]
    fam = {"x": lambda x: x, "x^3": lambda x: x**3, "h_1": lambda x: float(h1(x)),
           "2-x": lambda x: 2 - x}
    grid = list(np.linspace(0.05, 0.95, 19))
    add(lambda: check_d_substitution(fam, grid))
    add(lambda: check_d_equivalence({"h_0": lambda x: float(h0(x)), "h_1": lambda x: float(h1(x)),
                                     "exp": math.exp}, [0.2, 0.5, 0.8]))
    add(lambda: check_d_superposition([(1.0, 1), (2.0, 3), (0.5, 4.5)], grid))

    for kind in ("area", "length"):
        for beta in (0.0, 0.5, 1.0):
            uni = {"z+z^2/2": AREA_EXAMPLE, "(z+2)^3": LENGTH_EXAMPLE}
            add(lambda k=kind, b=beta, u=uni: check_convexity_regimes(k, b, u))
    add(reproduce_examples)
    return jobs


def _expect_violation(f, cid):
    rep = check_univalence(Criterion.WEDGE, f)
    found = rep.status is Status.FAIL and len(rep.failures) > 0
    return _finish(cid, [Witness("criterion violated somewhere", True, found, 0.0)], rep.notes)


def max_workers() -> int:
    env = os.environ.get("MIXEDMEANS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def _run_job(job):
    try:
        out = job()
    except MixedMeansError as exc:
        return [CheckReport(getattr(job, "__name__", "check"), Status.FAIL, [], f"error: {exc}")]
    return out if isinstance(out, list) else [out]


def run_suite(jobs=None, workers: int | None = None) -> list[CheckReport]:
    """Run checks (default suite when ``jobs`` is None) and sort by check id."""
    jobs = default_suite() if jobs is None else jobs
    workers = max_workers() if workers is None else workers
    if workers <= 1:
        results = [_run_job(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    reports = [r for batch in results for r in batch]
    return sorted(reports, key=lambda r: r.check_id)
