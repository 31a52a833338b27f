"""Truncated power series on the unit disk.

A :class:`PowerSeries` stores the Taylor coefficients ``a_0 ... a_N`` of a
holomorphic map at the origin.  The truncation order ``N`` is part of the
value: arithmetic never reads past it and always states the order of its
result.  For polynomials (every test map used here) the representation is
exact up to rounding; for genuine series the truncation error is the
caller's concern.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, ZeroConstantTermError

DEFAULT_ORDER = 64
ZERO_THRESHOLD = 1e-14


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise InvalidInputError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise InvalidInputError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"PowerSeries({np.array2string(self.coeffs, precision=6)})"

    def __add__(self, other: PowerSeries) -> PowerSeries:
        n = min(self.order, other.order)
        return PowerSeries(self.coeffs[: n + 1] + other.coeffs[: n + 1])

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        n = min(self.order, other.order)
        return PowerSeries(self.coeffs[: n + 1] - other.coeffs[: n + 1])

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def scale(self, c: complex) -> PowerSeries:
        return PowerSeries(c * self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def truncate(self, order: int) -> PowerSeries:
        if order < 0:
            raise InvalidInputError("order must be nonnegative")
        c = np.zeros(order + 1, dtype=complex)
        m = min(order, self.order)
        c[: m + 1] = self.coeffs[: m + 1]
        return PowerSeries(c)

    def leading_index(self, threshold: float = ZERO_THRESHOLD) -> int | None:
        """Index of the first nonzero coefficient past ``a_0``, or None for constants."""
        nz = np.flatnonzero(np.abs(self.coeffs[1:]) > threshold)
        return None if nz.size == 0 else int(nz[0]) + 1

    def support(self, threshold: float = ZERO_THRESHOLD) -> list[int]:
        return [int(k) for k in np.flatnonzero(np.abs(self.coeffs) > threshold)]

    def is_constant(self, threshold: float = ZERO_THRESHOLD) -> bool:
        return self.leading_index(threshold) is None

    def is_monomial(self, threshold: float = ZERO_THRESHOLD) -> bool:
        """True for ``a_0 + a_n z^n`` with ``a_n != 0``."""
        return len([k for k in self.support(threshold) if k > 0]) == 1

    def is_linear(self, threshold: float = ZERO_THRESHOLD) -> bool:
        return self.is_monomial(threshold) and self.leading_index(threshold) == 1


def construct(coeffs: Sequence[complex]) -> PowerSeries:
    return PowerSeries(coeffs)


def monomial(a0: complex, an: complex, n: int) -> PowerSeries:
    """The map ``a0 + an * z**n``."""
    if int(n) != n or n < 1:
        raise InvalidInputError("monomial degree must be a positive integer; use construct for constants")
    c = np.zeros(int(n) + 1, dtype=complex)
    c[0] = a0
    c[int(n)] = an
    return PowerSeries(c)


def derivative(s: PowerSeries) -> PowerSeries:
    if s.order == 0:
        return PowerSeries([0.0])
    k = np.arange(1, s.order + 1)
    return PowerSeries(k * s.coeffs[1:])


def evaluate(s: PowerSeries, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in s.coeffs[::-1]:
        acc = acc * z + a
    return acc[()] if acc.ndim == 0 else acc


def multiply(s: PowerSeries, t: PowerSeries, out_order: int | None = None) -> PowerSeries:
    """Cauchy product truncated at ``out_order`` (default: min of the input orders).

    Coefficients above ``min(s.order, t.order)`` are only exact when both
    inputs are polynomials; that is the caller's call.
    """
    if out_order is None:
        out_order = min(s.order, t.order)
    if out_order < 0:
        raise InvalidInputError("out_order must be nonnegative")
    full = np.convolve(s.coeffs, t.coeffs)
    c = np.zeros(out_order + 1, dtype=complex)
    m = min(out_order, full.size - 1)
    c[: m + 1] = full[: m + 1]
    return PowerSeries(c)


def sqrt_zero_free(s: PowerSeries, order: int | None = None) -> PowerSeries:
    """Series ``g`` with ``g*g == s`` through ``order`` (default ``s.order``).

    ``g(0)`` is the principal square root of ``a_0``.  Requires ``a_0 != 0``.
    """
    a = s.coeffs
    if abs(a[0]) == 0:
        raise ZeroConstantTermError("square root is not analytic at 0 when a_0 = 0")
    n = s.order if order is None else int(order)
    b = np.zeros(n + 1, dtype=complex)
    b[0] = cmath.sqrt(a[0])
    two_b0 = 2 * b[0]
    for k in range(1, n + 1):
        ak = a[k] if k <= s.order else 0.0
        acc = np.dot(b[1:k], b[k - 1 : 0 : -1]) if k > 1 else 0.0
        b[k] = (ak - acc) / two_b0
    return PowerSeries(b)
