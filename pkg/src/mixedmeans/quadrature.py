"""Quadrature helpers: adaptive Gauss-Kronrod on intervals, doubling
trapezoid on circles.

Interval rules delegate to QUADPACK through :func:`scipy.integrate.quad`;
this module only fixes tolerances, splits intervals that run into the
point 1 (where the weights ``(1-s)**alpha`` live) and turns silent
non-convergence into :class:`ToleranceNotMetError`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ToleranceNotMetError


@dataclass(frozen=True)
class QuadratureParams:
    rtol: float = 1e-10
    atol: float = 1e-14
    max_evals: int = 2**20

    @property
    def quad_limit(self) -> int:
        # QUADPACK spends 21 evaluations per subinterval
        return max(50, self.max_evals // 21)


DEFAULT_QUAD = QuadratureParams()
TIGHT_QUAD = QuadratureParams(rtol=1e-12, atol=1e-300)


def panels_toward_one(a: float, b: float) -> list[float]:
    """Breakpoints of ``[a, b]`` whose widths shrink geometrically toward 1.

    Each panel ``[1-2d, 1-d]`` keeps the dynamic range of ``(1-s)**alpha``
    bounded by ``2**|alpha|``.
    """
    pts = [a]
    if b > 0.5:
        gap = 1.0 - b
        edges = []
        d = 2.0 * gap
        while gap > 0 and 1.0 - d > max(a, 0.5):
            edges.append(1.0 - d)
            d *= 2.0
        if a < 0.5 and b > 0.5:
            edges.append(0.5)
        pts.extend(sorted(e for e in edges if a < e < b))
    pts.append(b)
    return pts


def integrate_interval(func, a: float, b: float, params: QuadratureParams = DEFAULT_QUAD,
                       breakpoints=None) -> tuple[float, float]:
    """Integral of ``func`` over ``[a, b]`` and an error estimate."""
    if b <= a:
        return 0.0, 0.0
    pts = panels_toward_one(a, b) if breakpoints is None else [a, *breakpoints, b]
    total, err = 0.0, 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        v, e = _quad(func, lo, hi, params)
        total += v
        err += e
    if err > max(params.rtol * abs(total), params.atol) * 10:
        raise ToleranceNotMetError(
            f"quadrature on [{a}, {b}] reached error {err:.3g}", estimate=total, error=err)
    return total, err


def integrate_weighted_to_one(func, alpha: float, params: QuadratureParams = DEFAULT_QUAD
                              ) -> tuple[float, float]:
    """``int_0^1 func(s) (1-s)**alpha ds`` for ``alpha > -1``.

    The algebraic weight is integrated exactly against the Chebyshev
    interpolant of ``func`` (QUADPACK QAWS), so the endpoint singularity
    costs nothing.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            v, e = integrate.quad(func, 0.0, 1.0, weight="alg", wvar=(0.0, alpha),
                                  epsabs=params.atol, epsrel=params.rtol,
                                  limit=params.quad_limit)
        except integrate.IntegrationWarning as exc:
            raise ToleranceNotMetError(str(exc)) from exc
    return v, e


def _quad(func, lo, hi, params):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        v, e = integrate.quad(func, lo, hi, epsabs=params.atol, epsrel=params.rtol,
                              limit=params.quad_limit)
    return v, e


def circle_mean(func, rtol: float = 1e-10, atol: float = 1e-14, start: int = 64,
                max_nodes: int = 2**14):
    """Mean of a smooth periodic ``func(theta)`` over ``[0, 2*pi)``.

    Doubles the trapezoid rule until two successive estimates agree.  The
    rule converges geometrically for analytic integrands.  Returns
    ``(value, error, converged)``; on failure the caller decides how to
    fall back.
    """
    n = start
    theta = 2 * math.pi * np.arange(n) / n
    vals = np.asarray(func(theta), dtype=float)
    prev = vals.mean()
    while n < max_nodes:
        mid = theta + math.pi / n
        mvals = np.asarray(func(mid), dtype=float)
        cur = 0.5 * (prev + mvals.mean())
        err = abs(cur - prev)
        n *= 2
        theta = np.concatenate([theta, mid])
        if err <= max(rtol * abs(cur), atol):
            return cur, err, True
        prev = cur
    return prev, err, False


def circle_mean_adaptive(func, breaks=(), params: QuadratureParams = DEFAULT_QUAD):
    """Gauss-Kronrod fallback for circle integrands with near-boundary kinks."""
    pts = sorted({0.0, 2 * math.pi, *(b % (2 * math.pi) for b in breaks)})
    total, err = 0.0, 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi - lo <= 0:
            continue
        v, e = _quad(lambda t: float(func(np.array([t]))[0]), lo, hi, params)
        total += v
        err += e
    total /= 2 * math.pi
    err /= 2 * math.pi
    if err > max(params.rtol * abs(total), params.atol) * 10:
        raise ToleranceNotMetError("circle quadrature did not converge", estimate=total, error=err)
    return total, err
