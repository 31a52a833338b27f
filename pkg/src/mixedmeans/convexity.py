"""Log-log convexity: the D-notation, Delta(lambda, x), and grid scans.

For positive ``F`` on ``(0, 1)``,

    D(F)(x) = F'/F + x (F'/F)',   x * D(F)(x) = d^2 log F / d(log x)^2,

so ``log x -> log F`` is convex exactly when ``D(F) >= 0``.  ``D`` is
additive over products (``D(PQ) = D(P) + D(Q)``, ``D(P/Q) = D(P) - D(Q)``)
and kills power functions, which the exact rational path relies on.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, SingularParameterError
from .exact import Poly, RationalFunc, SignChange, sign_changes
from .weights import MomentMean


class Verdict(enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"
    NEITHER = "neither"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConvexityReport:
    grid: list[tuple[float, float]]
    sign_changes: list[SignChange]
    verdict: Verdict
    certified_signs: list[int] = field(default_factory=list)

    @property
    def is_convex(self) -> bool:
        return self.verdict is Verdict.CONVEX


def _second_difference(g, u, h):
    gp2, gp1, g0, gm1, gm2 = g(u + 2 * h), g(u + h), g(u), g(u - h), g(u - 2 * h)
    return (-gp2 + 16 * gp1 - 30 * g0 + 16 * gm1 - gm2) / (12 * h * h)


def d_notation_numeric(F: Callable[[float], float], x: float, h: float | None = None) -> float:
    """``D(F)(x)`` from a five-point second difference of ``log F`` in ``u = log x``.

    ``x D(F)(x)`` is that second derivative, so no first derivative is
    needed.  The default step is ``min(5e-3, -log(x)/4)`` in ``u``, which
    keeps the stencil inside ``(0, 1)``.
    """
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    u = math.log(x)
    if h is None:
        h = min(5e-3, -u / 4)
    if not (h > 0 and u + 2 * h < 0.0):
        raise DomainError("difference stencil leaves (0, 1)")

    def g(v):
        val = F(math.exp(v))
        if not val > 0:
            raise DomainError(f"F must be positive, got F({math.exp(v)}) = {val}")
        return math.log(val)

    return _second_difference(g, u, h) / x


def d_notation_poly(p: Poly) -> RationalFunc:
    """``D(p) = (p p' + x (p p'' - p'^2)) / p^2``."""
    if p.is_zero():
        raise DomainError("D-notation of the zero polynomial is undefined")
    d1, d2 = p.deriv(), p.deriv().deriv()
    return RationalFunc(p * d1 + Poly.x() * (p * d2 - d1 * d1), p * p)


def d_notation_rational(R: RationalFunc) -> RationalFunc:
    """Exact ``D(R)`` for a nonzero rational function, via ``D(P/Q) = D(P) - D(Q)``."""
    if R.is_zero():
        raise DomainError("D-notation of the zero function is undefined")
    return d_notation_poly(R.num) - d_notation_poly(R.den)


def sign_numerator(R: RationalFunc) -> Poly:
    """Primitive integer polynomial carrying the sign of ``R`` on ``(0, 1)``.

    Positive constants and powers of ``x`` are stripped from the reduced
    numerator; the denominator must be a square (as ``D`` produces) so its
    sign plays no part.
    """
    return R.num.strip_x().primitive()


def delta(lam: float, alpha: float, x: float) -> float:
    """``Delta(lam, x) = D(f_lam)(x) - D(f_0)(x)`` for the weight exponent ``alpha``."""
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    if lam == 0:
        return 0.0
    return MomentMean([lam], [1.0], alpha).d_notation(x)


def delta_limit(lam: float, alpha: float) -> float:
    """Closed-form ``lim_{x->1} Delta(lam, x)``, valid for ``alpha < -3``."""
    if alpha in (-2.0, -3.0):
        raise SingularParameterError(f"limit formula is singular at alpha = {alpha}")
    return lam * (alpha + 1) * (lam + 2 + alpha) / ((alpha + 2) ** 2 * (alpha + 3))


def _indicators(F, grid):
    """Indicators ``x D(F)(x)`` and whether their signs are exact."""
    if isinstance(F, RationalFunc):
        dr = d_notation_rational(F)
        vals = []
        for x in grid:
            q = Fraction(x)
            vals.append(q * dr(q))
        return vals, True, dr
    if hasattr(F, "indicator"):
        return [F.indicator(x) for x in grid], False, None
    return [x * d_notation_numeric(F, x) for x in grid], False, None


def loglog_convexity_scan(F, grid: Sequence[float], tol: float = 1e-8) -> ConvexityReport:
    """Scan ``x D(F)(x)`` on ``grid`` and classify ``log x -> log F``.

    ``F`` may be a :class:`RationalFunc` (exact signs, exact sign-change
    intervals), anything with an ``indicator(x)`` method such as a
    :class:`MomentMean` (analytic), or a plain positive callable (finite
    differences).  A numeric indicator only counts as certified once it is
    beyond ``10 * tol``.
    """
    grid = sorted(float(x) for x in grid)
    vals, exact, dr = _indicators(F, grid)
    fvals = [float(v) for v in vals]
    margin = tol if exact else 10 * tol

    def certified(v):
        if exact:
            return (v > 0 and v > margin) - (v < 0 and -v > margin)
        return (v > margin) - (v < -margin)

    signs = [certified(v) for v in vals]
    all_nonneg = all(v >= -tol for v in fvals)
    all_nonpos = all(v <= tol for v in fvals)
    if all_nonneg:
        verdict = Verdict.CONVEX
    elif all_nonpos:
        verdict = Verdict.CONCAVE
    elif 1 in signs and -1 in signs:
        verdict = Verdict.NEITHER
    else:
        verdict = Verdict.INCONCLUSIVE

    if exact:
        changes = sign_changes(sign_numerator(dr), Fraction(grid[0]), Fraction(grid[-1]))
    else:
        changes = []
        nz = [(x, s) for x, s in zip(grid, signs) if s != 0]
        for (xa, sa), (xb, sb) in zip(nz, nz[1:]):
            if sa != sb:
                changes.append(SignChange(Fraction(xa), Fraction(xb), sa, sb, False))
    return ConvexityReport(list(zip(grid, fvals)), changes, verdict, signs)
