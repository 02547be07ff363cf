"""Exact piecewise polynomials on [t_0, inf) with closed-form integration.

Each segment polynomial is stored in powers of ``(t - left breakpoint)``,
so evaluation and integration far from the origin do not lose precision.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass


def _horner(coeffs: tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _integral_from_zero(coeffs: tuple[float, ...], x: float) -> float:
    return x * _horner(tuple(c / (n + 1) for n, c in enumerate(coeffs)), x)


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Piecewise polynomial; segment ``i`` covers ``[breakpoints[i], breakpoints[i+1])``.

    The last segment extends to +inf. Left of the first breakpoint the
    function is identically zero.
    """

    breakpoints: tuple[float, ...]
    segments: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.segments) or not self.breakpoints:
            raise ValueError("need one coefficient tuple per breakpoint")
        if any(b >= a for a, b in zip(self.breakpoints[1:], self.breakpoints)):
            raise ValueError("breakpoints must be strictly ascending")

    @property
    def degree(self) -> int:
        return max(len(c) for c in self.segments) - 1

    def segment_index(self, t: float) -> int:
        """Index of the segment containing ``t``, or -1 left of the domain."""
        return bisect.bisect_right(self.breakpoints, t) - 1

    def __call__(self, t: float) -> float:
        i = self.segment_index(t)
        if i < 0:
            return 0.0
        return _horner(self.segments[i], t - self.breakpoints[i])

    def left_limit(self, t: float) -> float:
        """Value approached from the left; differs from ``self(t)`` only at jumps."""
        i = bisect.bisect_left(self.breakpoints, t) - 1
        if i < 0:
            return 0.0
        return _horner(self.segments[i], t - self.breakpoints[i])

    def tail(self, start: float) -> "PiecewisePolynomial":
        """Restriction to [start, inf), with the first segment re-expanded about ``start``."""
        i = self.segment_index(start)
        if i < 0:
            raise ValueError("start lies left of the domain")
        h = start - self.breakpoints[i]
        coeffs = self.segments[i]
        # Taylor shift: c'_k = sum_n c_n * C(n, k) * h**(n - k)
        shifted = tuple(
            math.fsum(c * math.comb(n, k) * h ** (n - k) for n, c in enumerate(coeffs) if n >= k)
            for k in range(len(coeffs))
        )
        bps = (start,) + self.breakpoints[i + 1:]
        return PiecewisePolynomial(bps, (shifted,) + self.segments[i + 1:])

    def __sub__(self, value: float) -> "PiecewisePolynomial":
        segs = tuple((c[0] - value,) + c[1:] for c in self.segments)
        return PiecewisePolynomial(self.breakpoints, segs)

    def antiderivative(self) -> "PiecewisePolynomial":
        """Continuous primitive that vanishes at the first breakpoint."""
        segs = []
        offset = 0.0
        bps = self.breakpoints
        for i, coeffs in enumerate(self.segments):
            segs.append((offset,) + tuple(c / (n + 1) for n, c in enumerate(coeffs)))
            if i + 1 < len(bps):
                offset += _integral_from_zero(coeffs, bps[i + 1] - bps[i])
        return PiecewisePolynomial(bps, tuple(segs))

    def integrate(self, a: float, b: float) -> float:
        """Exact integral over [a, b], summed segment by segment."""
        if b < a:
            return -self.integrate(b, a)
        bps = self.breakpoints
        a = max(a, bps[0])
        if b <= a:
            return 0.0
        i = self.segment_index(a)
        parts = []
        while True:
            right = bps[i + 1] if i + 1 < len(bps) else math.inf
            hi = min(b, right)
            coeffs = self.segments[i]
            parts.append(
                _integral_from_zero(coeffs, hi - bps[i]) - _integral_from_zero(coeffs, a - bps[i])
            )
            if hi >= b:
                break
            a = hi
            i += 1
        return math.fsum(parts)

    def final_root(self) -> float:
        """Root of the last segment when it is linear with non-zero slope."""
        coeffs = self.segments[-1] + (0.0,)
        c0, c1 = coeffs[0], coeffs[1]
        if len(self.segments[-1]) > 2 or c1 == 0.0:
            raise ValueError("final segment is not a non-constant linear function")
        return self.breakpoints[-1] - c0 / c1


def step_function(times, jumps) -> PiecewisePolynomial:
    """Right-continuous step function: cumulative sum of ``jumps`` at ``times``."""
    level = 0.0
    segs = []
    for j in jumps:
        level += j
        segs.append((level,))
    return PiecewisePolynomial(tuple(times), tuple(segs))
