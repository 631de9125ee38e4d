"""Exact algebra of simple step functions on the real line.

A simple function is a finite sum ``sum_i a_i * 1_{I_i}`` with pairwise
disjoint half-open intervals ``I_i = [l_i, r_i)`` and values ``a_i >= 0``
(signed values are absolute-valued on construction, since every quantity
computed here depends on ``|f|`` only).  For such a function the
super-level-set measure

    mu_f(lam) = mes{x : |f(x)| > lam}

is a non-increasing, right-continuous step function of the level, and the
decreasing rearrangement

    f#(t) = inf{lam >= 0 : mu_f(lam) <= t}

is the non-increasing, right-continuous function on [0, oo) equimeasurable
with ``|f|``: the values of ``f`` sorted in decreasing order, the j-th
largest value occupying a length equal to the measure of its level set.
Concretely, if the distinct values are ``b_1 > b_2 > ... > b_k`` with level
set measures ``m_1, ..., m_k``, then ``f#`` equals ``b_j`` on
``[m_1 + ... + m_{j-1}, m_1 + ... + m_j)`` and 0 afterwards.

Every coordinate is stored as an exact `fractions.Fraction`; float inputs
convert losslessly (every float is a dyadic rational).  All operations in
this module are therefore exact, equality of step functions is decidable,
and the brute-force inf-definition oracle must agree with `rearrange`
*identically*, not merely within a tolerance.

All values are immutable after construction and every operation is a pure
function, so the whole module is thread-safe without coordination.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

Rational = Union[int, float, Fraction]

__all__ = [
    "Rational",
    "as_fraction",
    "SimpleFunction",
    "MonotoneStep",
    "distribution",
    "rearrange",
    "oracle_rearrange",
    "add",
    "mul",
    "abs_diff",
    "dilate",
    "scale",
]


def as_fraction(x: Rational) -> Fraction:
    """Exact conversion to Fraction; floats are dyadic rationals and convert losslessly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"coordinate must be finite, got {x!r}")
        return Fraction(x)
    raise TypeError(f"expected int, float or Fraction, got {type(x).__name__}")


Piece = Tuple[Fraction, Fraction, Fraction]  # (left, right, value), value on [left, right)


class SimpleFunction:
    """A finite linear combination of indicators of disjoint half-open intervals.

    ``pieces`` is a sorted tuple of ``(left, right, value)`` triples with
    ``left < right``, positive value, and pairwise disjoint intervals.
    Zero-valued pieces are dropped and touching pieces with equal value are
    merged, so equal functions compare equal structurally.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[Sequence[Rational]] = ()):
        norm = []
        for left, right, value in pieces:
            l, r, v = as_fraction(left), as_fraction(right), abs(as_fraction(value))
            if not l < r:
                raise ValueError(f"interval [{l}, {r}) is empty or inverted")
            if v != 0:
                norm.append((l, r, v))
        norm.sort(key=lambda p: p[0])
        for (_, r1, _), (l2, _, _) in zip(norm, norm[1:]):
            if r1 > l2:
                raise ValueError("intervals overlap")
        merged: list[Piece] = []
        for p in norm:
            if merged and merged[-1][1] == p[0] and merged[-1][2] == p[2]:
                merged[-1] = (merged[-1][0], p[1], p[2])
            else:
                merged.append(p)
        object.__setattr__(self, "pieces", tuple(merged))

    def __setattr__(self, name, value):
        raise AttributeError("SimpleFunction is immutable")

    def __eq__(self, other):
        return isinstance(other, SimpleFunction) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        body = ", ".join(f"[{l}, {r})*{v}" for l, r, v in self.pieces)
        return f"SimpleFunction({body or '0'})"

    def __bool__(self):
        return bool(self.pieces)

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def eval(self, x: Rational) -> Fraction:
        """Pointwise value at x (0 outside the support)."""
        x = as_fraction(x)
        i = bisect_right([p[0] for p in self.pieces], x) - 1
        if i >= 0 and x < self.pieces[i][1]:
            return self.pieces[i][2]
        return Fraction(0)

    def support_measure(self) -> Fraction:
        return sum((r - l for l, r, _ in self.pieces), Fraction(0))

    def support_bounds(self) -> Tuple[Fraction, Fraction]:
        """Leftmost and rightmost endpoints of the support (0, 0 for the zero function)."""
        if not self.pieces:
            return Fraction(0), Fraction(0)
        return self.pieces[0][0], self.pieces[-1][1]

    def max_value(self) -> Fraction:
        return max((v for _, _, v in self.pieces), default=Fraction(0))

    def values(self) -> Tuple[Fraction, ...]:
        """The distinct values, ascending."""
        return tuple(sorted({v for _, _, v in self.pieces}))

    def integral(self) -> Fraction:
        """Lebesgue integral, exact."""
        return sum((v * (r - l) for l, r, v in self.pieces), Fraction(0))

    def integral_to(self, t: Rational) -> Fraction:
        """Integral over (-oo, t), exact."""
        t = as_fraction(t)
        total = Fraction(0)
        for l, r, v in self.pieces:
            if t <= l:
                break
            total += v * (min(r, t) - l)
        return total


class MonotoneStep:
    """Non-increasing, right-continuous step function on [0, oo) with finite support.

    Value ``values[j]`` holds on ``[breakpoints[j-1], breakpoints[j])`` with an
    implicit initial breakpoint 0, and the function is 0 on
    ``[breakpoints[-1], oo)``.  Canonical form: strictly decreasing positive
    values (equal neighbours merged, trailing zeros dropped), so equality is
    structural and exact.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Iterable[Rational] = (), values: Iterable[Rational] = ()):
        bps = [as_fraction(b) for b in breakpoints]
        vls = [as_fraction(v) for v in values]
        if len(bps) != len(vls):
            raise ValueError("breakpoints and values must have equal length")
        prev = Fraction(0)
        for b in bps:
            if not b > prev:
                raise ValueError("breakpoints must be strictly increasing and positive")
            prev = b
        for v1, v2 in zip(vls, vls[1:]):
            if v1 < v2:
                raise ValueError("values must be non-increasing")
        if any(v < 0 for v in vls):
            raise ValueError("values must be non-negative")
        # canonical form: merge equal neighbours, drop trailing zero pieces
        cb: list[Fraction] = []
        cv: list[Fraction] = []
        for b, v in zip(bps, vls):
            if cv and cv[-1] == v:
                cb[-1] = b
            else:
                cb.append(b)
                cv.append(v)
        while cv and cv[-1] == 0:
            cb.pop()
            cv.pop()
        object.__setattr__(self, "breakpoints", tuple(cb))
        object.__setattr__(self, "values", tuple(cv))

    def __setattr__(self, name, value):
        raise AttributeError("MonotoneStep is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneStep)
            and self.breakpoints == other.breakpoints
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.breakpoints, self.values))

    def __repr__(self):
        prev = Fraction(0)
        parts = []
        for b, v in zip(self.breakpoints, self.values):
            parts.append(f"{v} on [{prev}, {b})")
            prev = b
        return f"MonotoneStep({'; '.join(parts) or '0'})"

    def __bool__(self):
        return bool(self.breakpoints)

    def eval(self, t: Rational) -> Fraction:
        """Right-continuous evaluation: value of the piece whose half-open interval contains t."""
        t = as_fraction(t)
        if t < 0:
            raise ValueError("t must be >= 0")
        j = bisect_right(self.breakpoints, t)
        if j < len(self.values):
            return self.values[j]
        return Fraction(0)

    def support_measure(self) -> Fraction:
        return self.breakpoints[-1] if self.breakpoints else Fraction(0)

    def integral(self) -> Fraction:
        prev = Fraction(0)
        total = Fraction(0)
        for b, v in zip(self.breakpoints, self.values):
            total += v * (b - prev)
            prev = b
        return total

    def to_simple(self) -> SimpleFunction:
        """The same step function viewed as a SimpleFunction on the [0, oo) axis."""
        prev = Fraction(0)
        pieces = []
        for b, v in zip(self.breakpoints, self.values):
            pieces.append((prev, b, v))
            prev = b
        return SimpleFunction(pieces)


def distribution(f: SimpleFunction) -> MonotoneStep:
    """Distribution function mu_f(lam) = mes{x : |f(x)| > lam}, exact.

    The breakpoints on the level axis are the distinct values of f; the value
    on [a_{i-1}, a_i) is the total length of the pieces with value >= a_i.
    """
    acc: dict[Fraction, Fraction] = {}
    for l, r, v in f.pieces:
        acc[v] = acc.get(v, Fraction(0)) + (r - l)
    vals = sorted(acc)  # a_1 < ... < a_n, all > 0
    measures = []
    tail = Fraction(0)
    for v in reversed(vals):
        tail += acc[v]
        measures.append(tail)
    measures.reverse()  # measures[i] = mes{|f| >= a_{i+1}} = mu_f on [a_i, a_{i+1})
    return MonotoneStep(vals, measures)


def rearrange(f: SimpleFunction) -> MonotoneStep:
    """Decreasing rearrangement f#: the values of f sorted decreasingly, each
    occupying a measure-length equal to its level-set measure."""
    acc: dict[Fraction, Fraction] = {}
    for l, r, v in f.pieces:
        acc[v] = acc.get(v, Fraction(0)) + (r - l)
    breaks = []
    values = []
    cum = Fraction(0)
    for v in sorted(acc, reverse=True):
        cum += acc[v]
        breaks.append(cum)
        values.append(v)
    return MonotoneStep(breaks, values)


@lru_cache(maxsize=8192)
def _level_table(f: SimpleFunction) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Candidate levels {0} U {values of f} with their mu_f values, ascending."""
    mu = distribution(f)
    pairs = [(Fraction(0), mu.values[0] if mu.values else Fraction(0))]
    for i, bp in enumerate(mu.breakpoints):
        nxt = mu.values[i + 1] if i + 1 < len(mu.values) else Fraction(0)
        pairs.append((bp, nxt))
    return tuple(pairs)


def oracle_rearrange(f: SimpleFunction, t: Rational) -> Fraction:
    """Brute-force evaluation of inf{lam >= 0 : mu_f(lam) <= t}.

    Scans the finite candidate set {0} U {values of f} in increasing order
    (mu_f is constant between consecutive values, so the infimum is attained
    there).  The infimum over the empty set would be +oo, but for a
    finite-support function mu_f(max value) = 0 <= t always holds, so that
    branch is asserted unreachable rather than silently clamped.
    """
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be >= 0")
    for lam, m in _level_table(f):
        if m <= t:
            return lam
    raise AssertionError("inf over empty set: impossible for finite-support input")


def _refine(f: SimpleFunction, g: SimpleFunction, op) -> SimpleFunction:
    """Pointwise combination on the common refinement of both interval sets."""
    points = sorted({e for l, r, _ in f.pieces for e in (l, r)}
                    | {e for l, r, _ in g.pieces for e in (l, r)})
    pieces = []
    for a, b in zip(points, points[1:]):
        v = op(f.eval(a), g.eval(a))
        if v != 0:
            pieces.append((a, b, v))
    return SimpleFunction(pieces)


def add(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    """Pointwise sum; values add on overlapping cells of the common refinement."""
    return _refine(f, g, lambda x, y: x + y)


def mul(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    """Pointwise product; zero outside the intersection of the supports."""
    return _refine(f, g, lambda x, y: x * y)


def abs_diff(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    """|f - g| on the common refinement (the L^p norms only see |f - g|)."""
    return _refine(f, g, lambda x, y: abs(x - y))


def dilate(f: SimpleFunction, lam: Rational) -> SimpleFunction:
    """x |-> f(lam * x): each interval [l, r) maps to [l/lam, r/lam), values unchanged."""
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError("dilation factor must be > 0")
    return SimpleFunction((l / lam, r / lam, v) for l, r, v in f.pieces)


def scale(f: SimpleFunction, c: Rational) -> SimpleFunction:
    """c * f for c >= 0."""
    c = as_fraction(c)
    if c < 0:
        raise ValueError("scale factor must be >= 0")
    if c == 0:
        return SimpleFunction()
    return SimpleFunction((l, r, c * v) for l, r, v in f.pieces)
