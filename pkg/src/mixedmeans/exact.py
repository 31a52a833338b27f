"""Polynomials and rational functions with exact rational coefficients,
plus Sturm-sequence root counting for certified sign analysis."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class Poly:
    """Dense polynomial, coefficients from the constant term upward."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(v) for v in self.c]})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k, v in enumerate(self.c):
            if v == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(v) if (k == 0 or abs(v) != 1) else ("-" if v < 0 else "")
            parts.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = other.c + (Fraction(0),) * (n - len(other.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-v for v in self.c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for v in reversed(self.c):
            acc = acc * x + (v if isinstance(acc, Fraction) else float(v))
        return acc

    def deriv(self) -> "Poly":
        return Poly(k * v for k, v in enumerate(self.c) if k > 0)

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.c) - len(other.c) + 1, 1)
        r = list(self.c)
        lead = other.c[-1]
        while len(r) >= len(other.c) and any(r):
            shift = len(r) - len(other.c)
            f = r[-1] / lead
            q[shift] = f
            for i, b in enumerate(other.c):
                r[shift + i] -= f * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self.c:
            return Fraction(0)
        den = math.lcm(*(v.denominator for v in self.c))
        num = math.gcd(*(v.numerator * (den // v.denominator) for v in self.c))
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        c = self.content()
        return Poly(v / c for v in self.c) if c else Poly()

    def monic(self) -> "Poly":
        return Poly(v / self.c[-1] for v in self.c)

    def x_valuation(self) -> int:
        """Multiplicity of the root at 0."""
        for k, v in enumerate(self.c):
            if v != 0:
                return k
        return 0

    def strip_x(self) -> "Poly":
        return Poly(self.c[self.x_valuation():])

    def int_coeffs(self) -> list[int]:
        if any(v.denominator != 1 for v in self.c):
            raise InvalidInputError("coefficients are not integers")
        return [int(v) for v in self.c]


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly([v])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


@dataclass(frozen=True)
class RationalFunc:
    """``num / den`` in lowest terms with a primitive integer denominator
    whose leading coefficient is positive."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise InvalidInputError("denominator is identically zero")
        num, den = self.num, self.den
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        scale = den.content() * (1 if den.c[-1] > 0 else -1)
        object.__setattr__(self, "num", Poly(v / scale for v in num.c))
        object.__setattr__(self, "den", Poly(v / scale for v in den.c))

    @classmethod
    def of(cls, num, den=(1,)) -> "RationalFunc":
        n = num if isinstance(num, Poly) else Poly(num)
        d = den if isinstance(den, Poly) else Poly(den)
        return cls(n, d)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __add__(self, other):
        return RationalFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RationalFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return RationalFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        return RationalFunc(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def deriv(self) -> "RationalFunc":
        return RationalFunc(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.deriv()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(seq: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo, hi, seq=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open ``(lo, hi]``."""
    seq = seq if seq is not None else sturm_sequence(p)
    return _variations(seq, _frac(lo)) - _variations(seq, _frac(hi))


@dataclass(frozen=True)
class SignChange:
    """An interval holding exactly one root of ``p`` at which ``p`` changes sign.

    ``monotone`` records that ``p'`` has no root on the closed interval, so
    ``p`` is strictly monotone there and the crossing is unique.
    """

    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int
    monotone: bool

    @property
    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)


def sign_changes(p: Poly, lo, hi, width_exponent: int = 40) -> list[SignChange]:
    """Certified sign changes of ``p`` on the open interval ``(lo, hi)``.

    Every distinct root is isolated by exact bisection with Sturm counts
    and refined to width ``<= 2**-width_exponent * (hi - lo)``; roots of
    even multiplicity are dropped since ``p`` keeps its sign across them.
    """
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise InvalidInputError("need lo < hi")
    if p.is_zero():
        return []
    seq = sturm_sequence(p)
    dseq = sturm_sequence(p.deriv()) if p.degree > 1 else None
    target = (hi - lo) / 2 ** width_exponent
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        # the open interval (a, b): drop a root sitting exactly at b
        n = count_roots(p, a, b, seq) - (1 if p(b) == 0 else 0)
        if n == 0:
            continue
        if n == 1 and p(a) != 0 and p(b) != 0 and b - a <= target:
            sa, sb = _sign(p(a)), _sign(p(b))
            if sa != sb:
                mono = dseq is None or (count_roots(p.deriv(), a, b, dseq) == 0
                                        and p.deriv()(a) != 0)
                out.append(SignChange(a, b, sa, sb, mono))
            continue
        m = _split(p, a, b)
        if p(m) == 0:
            # a rational root: bracket it tightly so both halves stay root-free at the ends
            eps = min(target, (b - a) / 4)
            while count_roots(p, m - eps, m + eps, seq) > 1 or p(m - eps) == 0 or p(m + eps) == 0:
                eps /= 2
            stack.extend([(a, m - eps), (m - eps, m + eps), (m + eps, b)])
        else:
            stack.extend([(a, m), (m, b)])
    return sorted(out, key=lambda s: s.lo)


def _split(p, a, b):
    m = (a + b) / 2
    for k in (2, 3, 5, 7):
        if p(m) != 0:
            break
        m = a + (b - a) * Fraction(k, 2 * k + 1)
    return m
