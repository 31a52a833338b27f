"""Area and boundary length of ``f(r D)`` and the mixed ratios.

Two area notions are kept apart on purpose:

* :func:`area_dirichlet` is ``int_{rD} |f'|^2 dA``, the multiplicity-counting
  area.  It equals the area of the image set exactly when ``f`` is
  univalent.
* :func:`area_image_raster` measures the image set itself on a grid, with
  a covering error bound.

:func:`area` picks the best notion for a given map: the closed form
``pi |a_n|^2 r^(2n)`` for monomials ``a_0 + a_n z^n`` (whose image is a
disk covered ``n`` times), the Dirichlet sum otherwise.  The same rule
holds for lengths: ``2 pi |a_n| r^n`` for monomials, the circle integral
of ``|f'|`` for univalent maps.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import series as ps
from .errors import DomainError, InvalidInputError, ToleranceNotMetError
from .quadrature import DEFAULT_QUAD, QuadratureParams, circle_mean, circle_mean_adaptive


class Kind(enum.Enum):
    AREA = "area"
    LENGTH = "length"

    @classmethod
    def parse(cls, value) -> "Kind":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class Method(enum.Enum):
    COEFFICIENT_SUM = "coefficient-sum"
    QUADRATURE = "quadrature"
    RASTER = "raster"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class GeomValue:
    value: float
    error_bound: float
    method: Method

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DiskEvaluator:
    """Uniform access to a holomorphic map given by callables.

    ``derivs`` optionally holds ``(f'', f''')`` for the Schwarzian; without
    them the univalence checks fall back to finite differences of
    ``eval_deriv``.
    """

    eval: Callable
    eval_deriv: Callable
    derivs: tuple = ()
    series: ps.PowerSeries | None = None

    @classmethod
    def from_series(cls, s: ps.PowerSeries) -> "DiskEvaluator":
        d1 = ps.derivative(s)
        d2 = ps.derivative(d1)
        d3 = ps.derivative(d2)
        return cls(eval=s.__call__, eval_deriv=d1.__call__,
                   derivs=(d2.__call__, d3.__call__), series=s)


MapLike = Union[ps.PowerSeries, DiskEvaluator]


def as_evaluator(f: MapLike) -> DiskEvaluator:
    if isinstance(f, DiskEvaluator):
        return f
    if isinstance(f, ps.PowerSeries):
        return DiskEvaluator.from_series(f)
    raise InvalidInputError(f"expected PowerSeries or DiskEvaluator, got {type(f).__name__}")


def as_series(f: MapLike) -> ps.PowerSeries | None:
    if isinstance(f, ps.PowerSeries):
        return f
    if isinstance(f, DiskEvaluator):
        return f.series
    return None


def check_radius(r: float) -> float:
    r = float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r}")
    return r


def area_dirichlet(f: MapLike, r: float) -> GeomValue:
    """``pi * sum n |a_n|^2 r^(2n)`` for series; polar quadrature for evaluators."""
    r = check_radius(r)
    s = as_series(f)
    if s is not None:
        n = np.arange(s.order + 1)
        terms = n * np.abs(s.coeffs) ** 2 * r ** (2 * n)
        value = math.pi * float(np.sum(terms))
        return GeomValue(value, 4 * np.finfo(float).eps * value, Method.COEFFICIENT_SUM)
    return _area_dirichlet_quadrature(f, r)


def _area_dirichlet_quadrature(f: DiskEvaluator, r: float, n_radial: int = 64) -> GeomValue:
    x, w = np.polynomial.legendre.leggauss(n_radial)
    rho = 0.5 * r * (x + 1)
    w = 0.5 * r * w
    total = 0.0
    for rk, wk in zip(rho, w):
        m, _, ok = circle_mean(lambda t: np.abs(f.eval_deriv(rk * np.exp(1j * t))) ** 2)
        total += wk * 2 * math.pi * rk * m
    # Gauss-Legendre on a polynomial-in-rho integrand of modest degree
    return GeomValue(total, 1e-12 * total, Method.QUADRATURE)


def area(f: MapLike, r: float) -> GeomValue:
    """Best available area of ``f(rD)``: closed form for monomials, else Dirichlet."""
    return _area(f, check_radius(r))


def _area(f, r):
    s = as_series(f)
    if s is not None:
        if s.is_constant():
            return GeomValue(0.0, 0.0, Method.CLOSED_FORM)
        if s.is_monomial():
            n = s.leading_index()
            return GeomValue(math.pi * abs(s[n]) ** 2 * r ** (2 * n), 0.0, Method.CLOSED_FORM)
        n = np.arange(s.order + 1)
        value = math.pi * float(np.sum(n * np.abs(s.coeffs) ** 2 * r ** (2 * n)))
        return GeomValue(value, 4 * np.finfo(float).eps * value, Method.COEFFICIENT_SUM)
    return _area_dirichlet_quadrature(f, r)


def area_image_raster(f: MapLike, r: float, cells_per_axis: int = 512) -> GeomValue:
    """Area of the image SET ``f(rD)`` (no multiplicity) on a uniform grid.

    ``rD`` is sampled on a polar grid of ``8*cells`` angles by ``2*cells``
    radii; a grid cell over the image bounding box is covered when a sample
    lands in it.  Covered area is the value; cells on either side of the
    covered/uncovered frontier make up the error bound.
    """
    r = check_radius(r)
    cells = int(cells_per_axis)
    if cells < 16:
        raise InvalidInputError("cells_per_axis must be at least 16")
    ev = as_evaluator(f)
    n_theta, n_r = 8 * cells, 2 * cells
    theta = 2 * math.pi * np.arange(n_theta) / n_theta
    rho = r * np.arange(n_r + 1) / n_r
    z = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
    w = np.asarray(ev.eval(z), dtype=complex)
    x, y = w.real, w.imag
    xmin, xmax, ymin, ymax = x.min(), x.max(), y.min(), y.max()
    span = max(xmax - xmin, ymax - ymin)
    if span <= 0.0:
        return GeomValue(0.0, 0.0, Method.RASTER)
    h = span * (1 + 2.0 / cells) / cells
    x0 = 0.5 * (xmin + xmax) - 0.5 * cells * h
    y0 = 0.5 * (ymin + ymax) - 0.5 * cells * h
    ix = np.clip(((x - x0) / h).astype(np.int64), 0, cells - 1)
    iy = np.clip(((y - y0) / h).astype(np.int64), 0, cells - 1)
    grid = np.zeros((cells, cells), dtype=bool)
    grid[ix, iy] = True

    padded = np.pad(grid, 1)
    neighbours_any = np.zeros_like(grid)
    neighbours_all = np.ones_like(grid)
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            shifted = padded[1 + dx : 1 + dx + cells, 1 + dy : 1 + dy + cells]
            neighbours_any |= shifted
            neighbours_all &= shifted
    frontier = (grid & ~neighbours_all) | (~grid & neighbours_any)
    cell_area = h * h
    return GeomValue(float(grid.sum()) * cell_area, float(frontier.sum()) * cell_area, Method.RASTER)


def length_boundary(f: MapLike, r: float, quad: QuadratureParams = DEFAULT_QUAD) -> GeomValue:
    """Length of the boundary of ``f(rD)``.

    Defined only for monomials ``a_0 + a_n z^n`` (closed form
    ``2 pi |a_n| r^n``) and univalent maps (``int_{rT} |f'| |dz|``).  The
    univalence hypothesis is the caller's; it is not checked here.
    """
    return _length(f, check_radius(r), quad)


def _length(f, r, quad):
    s = as_series(f)
    if s is not None:
        if s.is_constant():
            return GeomValue(0.0, 0.0, Method.CLOSED_FORM)
        if s.is_monomial():
            n = s.leading_index()
            return GeomValue(2 * math.pi * abs(s[n]) * r ** n, 0.0, Method.CLOSED_FORM)
    ev = as_evaluator(f)

    def speed(theta):
        return np.abs(ev.eval_deriv(r * np.exp(1j * theta)))

    m, err, ok = circle_mean(speed, rtol=quad.rtol, atol=quad.atol,
                             max_nodes=min(2**14, quad.max_evals))
    if not ok:
        m, err = circle_mean_adaptive(speed, _critical_angles(s, r), quad)
    scale = 2 * math.pi * r
    return GeomValue(scale * m, scale * err, Method.QUADRATURE)


def _critical_angles(s: ps.PowerSeries | None, r: float) -> list[float]:
    """Arguments of zeros of ``f'`` close to the circle ``|z| = r``."""
    if s is None:
        return []
    d = ps.derivative(s).coeffs
    nz = np.flatnonzero(np.abs(d) > ps.ZERO_THRESHOLD)
    if nz.size == 0 or nz[-1] == 0:
        return []
    roots = np.roots(d[: nz[-1] + 1][::-1])
    return [float(np.angle(z)) for z in roots if abs(abs(z) - r) < 0.5 * (1 - r) + 0.05]


def mixed_ratio(kind, f: MapLike, r: float, beta: float,
                quad: QuadratureParams = DEFAULT_QUAD) -> GeomValue:
    """``A(f,r)/(pi r^2)^beta`` or ``L(f,r)/(2 pi r)^beta``."""
    return _mixed_ratio(Kind.parse(kind), f, check_radius(r), check_beta(beta), quad)


def _mixed_ratio(kind, f, r, beta, quad=DEFAULT_QUAD):
    # r may sit on the closed interval here; endpoint values are limits
    if r == 0.0:
        return GeomValue(phi_at_zero(kind, f, beta), 0.0, Method.CLOSED_FORM)
    if kind is Kind.AREA:
        g, scale = _area(f, r), (math.pi * r * r) ** beta
    else:
        g, scale = _length(f, r, quad), (2 * math.pi * r) ** beta
    return GeomValue(g.value / scale, g.error_bound / scale, g.method)


def check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return beta


def phi_at_zero(kind, f: MapLike, beta: float) -> float:
    """``lim_{r->0}`` of the mixed ratio: 0 for beta < 1, ``|f'(0)|^2`` or ``|f'(0)|`` at beta = 1."""
    kind = Kind.parse(kind)
    if check_beta(beta) < 1.0:
        return 0.0
    s = as_series(f)
    if s is not None:
        if s.is_monomial() and s.leading_index() > 1:
            return 0.0
        d0 = abs(s[1]) if s.order >= 1 else 0.0
    else:
        d0 = abs(complex(as_evaluator(f).eval_deriv(0.0)))
    return d0 * d0 if kind is Kind.AREA else d0

