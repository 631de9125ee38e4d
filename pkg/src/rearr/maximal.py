"""Exact running-average maximal function of a non-increasing step function.

For a non-increasing f# the maximal function

    f**(t) = (1/t) * integral_0^t f#(s) ds,   t > 0

is piecewise of the form ``a + b/t``: on the piece [t_{j-1}, t_j) where f#
equals v_j, writing C_j = integral_0^{t_{j-1}} f#, one has
a_j = v_j and b_j = C_j - v_j * t_{j-1}; past the last breakpoint the
average decays as B/t with B = integral_0^oo f#.  Keeping this closed form
(rather than samples) makes the Lorentz triple-norm integrals exact per
piece.

All coefficients are exact Fractions, so continuity across breakpoints and
the invariants b_j >= 0 (monotonicity) and f** >= f# hold exactly, and
evaluation at rational points is exact.  t = 0 is excluded from the domain
(the 1/t form is singular there); the limit value is the first piece's
constant a_1 = f#(0), exposed via `limit_at_zero`.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from math import log
from typing import Tuple

from .steps import MonotoneStep, Rational, as_fraction

__all__ = ["MaximalFunction", "maximal", "product_integral_to"]


class MaximalFunction:
    """Piecewise-hyperbolic representation of a maximal function.

    ``coeffs[j] = (a_j, b_j)`` represents t |-> a_j + b_j/t on
    [breakpoints[j-1], breakpoints[j]) (implicit initial breakpoint 0), and
    the tail piece is (0, tail) on [breakpoints[-1], oo).
    """

    __slots__ = ("breakpoints", "coeffs", "tail")

    def __init__(self, breakpoints, coeffs, tail):
        object.__setattr__(self, "breakpoints", tuple(breakpoints))
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "tail", tail)

    def __setattr__(self, name, value):
        raise AttributeError("MaximalFunction is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MaximalFunction)
            and self.breakpoints == other.breakpoints
            and self.coeffs == other.coeffs
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash((self.breakpoints, self.coeffs, self.tail))

    def __repr__(self):
        return f"MaximalFunction(breaks={self.breakpoints}, coeffs={self.coeffs}, tail={self.tail})"

    def __bool__(self):
        return bool(self.breakpoints) or self.tail != 0

    def piece_at(self, t: Fraction) -> Tuple[Fraction, Fraction]:
        """Coefficients (a, b) of the piece containing t > 0 (tail included)."""
        j = bisect_right(self.breakpoints, t)
        if j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0), self.tail

    def eval(self, t: Rational) -> Fraction:
        """Exact value a + b/t of the piece containing t; t <= 0 is rejected."""
        t = as_fraction(t)
        if t <= 0:
            raise ValueError("maximal function is defined for t > 0")
        a, b = self.piece_at(t)
        return a + b / t

    def limit_at_zero(self) -> Fraction:
        """lim_{t -> 0+} f**(t) = f#(0) (0 for the zero function)."""
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[0][0]

    def total_integral(self) -> Fraction:
        """B = integral_0^oo of the underlying step function."""
        return self.tail


def maximal(s: MonotoneStep) -> MaximalFunction:
    """Exact maximal function of a non-increasing step function."""
    coeffs = []
    cum = Fraction(0)  # integral of s over [0, t_{j-1})
    prev = Fraction(0)
    for b, v in zip(s.breakpoints, s.values):
        coeffs.append((v, cum - v * prev))
        cum += v * (b - prev)
        prev = b
    return MaximalFunction(s.breakpoints, coeffs, cum)


def product_integral_to(m1: MaximalFunction, m2: MaximalFunction, t: Rational) -> float:
    """integral_0^t m1(s) * m2(s) ds via the per-cell closed form.

    On a cell [x, y) the integrand is (a1 + b1/s)(a2 + b2/s); its
    antiderivative is a1*a2*s + (a1*b2 + a2*b1)*ln s - b1*b2/s.  The very
    first cell starts at 0 where both b coefficients vanish, so no log or
    1/s term is ever evaluated at 0.  Log terms force a float result.
    """
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0
    cuts = sorted({b for b in m1.breakpoints if b < t}
                  | {b for b in m2.breakpoints if b < t}
                  | {Fraction(0), t})
    total = 0.0
    for x, y in zip(cuts, cuts[1:]):
        a1, b1 = m1.piece_at(x)
        a2, b2 = m2.piece_at(x)
        const = a1 * a2 * (y - x)
        cell = float(const)
        cross = a1 * b2 + a2 * b1
        if cross != 0:
            cell += float(cross) * log(float(y) / float(x))
        sq = b1 * b2
        if sq != 0:
            cell += float(sq) * (1.0 / float(x) - 1.0 / float(y))
        total += cell
    return total
