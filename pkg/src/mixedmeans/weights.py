"""Weighted integral means of the mixed area and mixed length.

The weight is ``dmu_alpha(t) = (1 - t^2)^alpha d(t^2)`` on ``(0, r)`` and
``nu_alpha(r)`` is its mass.  Every integral is taken after the
substitution ``s = t^2``, so the weight becomes ``(1 - s)^alpha ds`` on
``(0, r^2)`` and

    mean(f, r) = int_0^{r^2} Phi(f, sqrt(s)) (1-s)^alpha ds / nu_alpha(r).

For monomials this is a ratio of incomplete beta integrals
``f_lambda(x) = int_0^x t^lambda (1-t)^alpha dt``.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from . import geometry as geo
from . import series as ps
from .errors import DomainError, InvalidInputError
from .geometry import Kind
from .quadrature import (DEFAULT_QUAD, TIGHT_QUAD, QuadratureParams, integrate_interval,
                         integrate_weighted_to_one)


@dataclass(frozen=True)
class WeightParams:
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", geo.check_beta(self.beta))
        if not math.isfinite(self.alpha):
            raise InvalidInputError("alpha must be finite")


class MeanMethod(enum.Enum):
    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class MeanValue:
    value: float
    error_bound: float
    method: MeanMethod

    def __float__(self):
        return float(self.value)


def f_zero(alpha: float, x: float) -> float:
    """``int_0^x (1-t)^alpha dt`` in closed form, accurate for small ``x``."""
    if alpha == -1.0:
        return -math.log1p(-x)
    return -math.expm1((alpha + 1.0) * math.log1p(-x)) / (alpha + 1.0)


def nu_alpha(alpha: float, r: float) -> float:
    """Mass of ``dmu_alpha`` on ``[0, r]``."""
    r = geo.check_radius(r)
    return f_zero(float(alpha), r * r)


def _check_x(x):
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    return x


def f_lambda(lam: float, alpha: float, x: float, quad: QuadratureParams = TIGHT_QUAD) -> float:
    """Incomplete beta integral ``int_0^x t^lam (1-t)^alpha dt`` for any real alpha."""
    x = _check_x(x)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    if lam == 0:
        return f_zero(alpha, x)
    v, _ = integrate_interval(lambda t: t ** lam * (1.0 - t) ** alpha, 0.0, x, quad)
    return v


class MomentMean:
    """A mean that is a positive combination of incomplete beta ratios,

        F(x) = sum_k c_k f_{lambda_k}(x) / f_0(x),   x = r^2.

    Monomial means are single terms; univalent maps are superpositions
    (Dirichlet coefficients for area, coefficients of ``sqrt(f')`` for
    length).  Besides the value, :meth:`indicator` returns
    ``x * D(F)(x)``, the second derivative of ``log F`` in ``log x``,
    evaluated analytically so that only two quadratures are needed and
    no quadrature output is differentiated.
    """

    def __init__(self, lambdas: Sequence[float], coeffs: Sequence[float], alpha: float,
                 quad: QuadratureParams = TIGHT_QUAD):
        lam = np.asarray(lambdas, dtype=float)
        c = np.asarray(coeffs, dtype=float)
        keep = c > 0
        if lam.shape != c.shape or np.any(c < 0) or np.any(lam < 0):
            raise InvalidInputError("need matching nonnegative exponents and coefficients")
        self.lambdas = lam[keep]
        self.coeffs = c[keep]
        self.alpha = float(alpha)
        self.quad = quad

    def _p(self, t):
        return float(np.dot(self.coeffs, t ** self.lambdas))

    def _parts(self, x):
        x = _check_x(x)
        a = self.alpha
        w = (1.0 - x) ** a
        px = self._p(x)
        n, _ = integrate_interval(lambda t: self._p(t) * (1.0 - t) ** a, 0.0, x, self.quad)
        g, _ = integrate_interval(lambda t: (px - self._p(t)) * (1.0 - t) ** a, 0.0, x, self.quad)
        return x, w, n, g, f_zero(a, x)

    def value(self, x: float) -> float:
        x = _check_x(x)
        if self.coeffs.size == 0:
            return 0.0
        n, _ = integrate_interval(lambda t: self._p(t) * (1.0 - t) ** self.alpha, 0.0, x, self.quad)
        return n / f_zero(self.alpha, x)

    def __call__(self, x):
        return self.value(x)

    def d_notation(self, x: float) -> float:
        """``D(F)(x) = F'/F + x (F'/F)'``."""
        if self.coeffs.size == 0:
            raise DomainError("D-notation of the zero function is undefined")
        x, w, n, g, f0 = self._parts(x)
        a = self.alpha
        u = self._p(x) * w / n
        u0 = w / f0
        d = w * g / (n * f0)
        xdp = float(np.dot(self.coeffs * self.lambdas, x ** self.lambdas))
        return d * (1.0 - a * x / (1.0 - x) - x * (u + u0)) + w * xdp / n

    def indicator(self, x: float) -> float:
        return x * self.d_notation(x)


def moment_mean(kind, f, params: WeightParams, order: int = 256,
                quad: QuadratureParams = TIGHT_QUAD) -> MomentMean:
    """Superposition form of ``mean(f, sqrt(x))`` for monomials and univalent series.

    Length uses ``Phi_{L,1}(f,t) = sum |b_n|^2 t^(2n)`` with ``b`` the
    coefficients of ``sqrt(f')`` truncated at ``order``; ``f'`` must be
    zero-free on the disk.
    """
    kind = Kind.parse(kind)
    s = geo.as_series(f)
    if s is None:
        raise InvalidInputError("moment_mean needs a PowerSeries")
    b = params.beta
    if s.is_constant():
        return MomentMean([], [], params.alpha, quad)
    if s.is_monomial():
        n = s.leading_index()
        if kind is Kind.AREA:
            return MomentMean([n - b], [math.pi ** (1 - b) * abs(s[n]) ** 2], params.alpha, quad)
        return MomentMean([(n - b) / 2], [(2 * math.pi) ** (1 - b) * abs(s[n])], params.alpha, quad)
    if kind is Kind.AREA:
        k = np.arange(1, s.order + 1)
        c = math.pi ** (1 - b) * k * np.abs(s.coeffs[1:]) ** 2
        return MomentMean(k - b, c, params.alpha, quad)
    g = ps.sqrt_zero_free(ps.derivative(s), order=order)
    k = np.arange(g.order + 1)
    c = (2 * math.pi) ** (1 - b) * np.abs(g.coeffs) ** 2
    return MomentMean(k + (1 - b) / 2, c, params.alpha, quad)


def _integrand(kind, f, beta, alpha, quad):
    def h(s):
        return geo._mixed_ratio(kind, f, math.sqrt(s), beta, quad).value * (1.0 - s) ** alpha
    return h


def weighted_mean(kind, f, params: WeightParams, r: float,
                  quad: QuadratureParams = DEFAULT_QUAD, fast_path: bool = True) -> MeanValue:
    """``int_0^r Phi dmu_alpha / nu_alpha(r)`` for the area or length ratio.

    With ``fast_path`` monomials go through :func:`weighted_mean_monomial`;
    otherwise the ratio is integrated numerically in ``s = t^2``.
    """
    kind = Kind.parse(kind)
    r = geo.check_radius(r)
    s = geo.as_series(f)
    if s is not None and s.is_constant():
        return MeanValue(0.0, 0.0, MeanMethod.CLOSED_FORM)
    if fast_path and s is not None and s.is_monomial():
        n = s.leading_index()
        return weighted_mean_monomial(kind, n, params, r, coeff=s[n])
    x = r * r
    h = _integrand(kind, f, params.beta, params.alpha, quad)
    # the integral is O(x) for small r, so scale the absolute floor with it
    v, e = integrate_interval(h, 0.0, x, dataclasses.replace(quad, atol=quad.atol * x))
    nu = f_zero(params.alpha, x)
    return MeanValue(v / nu, e / nu, MeanMethod.QUADRATURE)


def weighted_means_along(kind, f, params: WeightParams, radii: Sequence[float],
                         quad: QuadratureParams = DEFAULT_QUAD) -> list[MeanValue]:
    """:func:`weighted_mean` at every radius of an ascending grid.

    The numerator integral is accumulated gap by gap, so a dense grid costs
    about as much as one evaluation at the largest radius.
    """
    kind = Kind.parse(kind)
    radii = [geo.check_radius(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise InvalidInputError("radii must be strictly ascending")
    s = geo.as_series(f)
    if s is not None and (s.is_constant() or s.is_monomial()):
        return [weighted_mean(kind, f, params, r, quad) for r in radii]
    h = _integrand(kind, f, params.beta, params.alpha, quad)
    out, total, err, prev = [], 0.0, 0.0, 0.0
    for r in radii:
        x = r * r
        v, e = integrate_interval(h, prev, x, dataclasses.replace(quad, atol=quad.atol * (x - prev)))
        total, err, prev = total + v, err + e, x
        nu = f_zero(params.alpha, x)
        out.append(MeanValue(total / nu, err / nu, MeanMethod.QUADRATURE))
    return out


def weighted_mean_monomial(kind, n: int, params: WeightParams, r: float,
                           coeff: complex = 1.0) -> MeanValue:
    """Mean of ``coeff * z^n`` as a ratio of incomplete beta integrals."""
    kind = Kind.parse(kind)
    if int(n) != n or n < 1:
        raise InvalidInputError("n must be a positive integer")
    r = geo.check_radius(r)
    x, b, a = r * r, params.beta, params.alpha
    if kind is Kind.AREA:
        lam, pref = n - b, math.pi ** (1 - b) * abs(coeff) ** 2
    else:
        lam, pref = (n - b) / 2, (2 * math.pi) ** (1 - b) * abs(coeff)
    ratio = 1.0 if lam == 0 else f_lambda(lam, a, x) / f_zero(a, x)
    return MeanValue(pref * ratio, 1e-12 * pref * ratio, MeanMethod.CLOSED_FORM)


def mean_at_one(kind, f, params: WeightParams, quad: QuadratureParams = DEFAULT_QUAD) -> MeanValue:
    """``lim_{r->1}`` of the weighted mean, i.e. its supremum over ``(0, 1)``.

    Defined for ``alpha > -1`` only: for ``alpha <= -1`` the weight has
    infinite mass and the integral is finite only for constant maps.
    """
    kind = Kind.parse(kind)
    a, b = params.alpha, params.beta
    if a <= -1.0:
        raise DomainError("mean at r=1 needs alpha > -1; for alpha <= -1 the weighted "
                          "integral diverges unless f is constant")
    s = geo.as_series(f)
    if s is not None and s.is_constant():
        return MeanValue(0.0, 0.0, MeanMethod.CLOSED_FORM)
    if s is not None and s.is_monomial():
        n = s.leading_index()
        if kind is Kind.AREA:
            lam, pref = n - b, math.pi ** (1 - b) * abs(s[n]) ** 2
        else:
            lam, pref = (n - b) / 2, (2 * math.pi) ** (1 - b) * abs(s[n])
        v = pref * (a + 1.0) * math.exp(special.betaln(lam + 1.0, a + 1.0))
        return MeanValue(v, 1e-14 * v, MeanMethod.CLOSED_FORM)

    def phi(t):
        return geo._mixed_ratio(kind, f, math.sqrt(t), b, quad).value

    v, e = integrate_weighted_to_one(phi, a, quad)
    return MeanValue(v * (a + 1.0), e * (a + 1.0), MeanMethod.QUADRATURE)
