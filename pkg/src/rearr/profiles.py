"""Numeric rearrangement machinery for radial functions on R^d.

A `RadialProfile` is a scalar map r in (0, R] |-> value >= 0 together with
its dimension d and singularity/monotonicity metadata.  Every d-dimensional
quantity reduces to a 1-D radial integral with Jacobian d * omega_d * r^(d-1),
where omega_d = pi^(d/2) / Gamma(d/2 + 1) is the unit-ball volume.

For a non-increasing profile the function is already symmetric-decreasing,
so its decreasing rearrangement inverts in closed form,

    f#(t) = profile((t / omega_d)^(1/d))    for t below the support measure,

and the symmetric rearrangement is recovered as f*(x) = f#(omega_d |x|^d).
(The latter composition is the unique equimeasurable choice; in particular
for d = 1 it reads f#(2|x|).)  For profiles that are not monotone, the
super-level sets are located numerically on a cached radial scan and the
rearrangement is the monotone inverse of the resulting distribution
function, tabulated on a level grid that clusters at both ends.

The power-log family

    bertrand(alpha, beta):  r |-> (-ln r)^beta * r^(-alpha)   on (0, 1]

is the workhorse example: the convergence of its norm integrals is decided
by the endpoint exponents, which is exactly what the quadrature module's
singular-endpoint handling is for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .quadrature import DivergenceError, QuadratureSpec, integrate
from .steps import MonotoneStep

__all__ = [
    "unit_ball_volume",
    "RadialProfile",
    "bertrand",
    "constant_profile",
    "linear_profile",
    "tent_profile",
    "RearrangedMap",
    "numeric_distribution",
    "numeric_rearrange",
    "symmetric_rearrangement",
    "superlevel_measure",
    "sample_to_step",
]

_R_TOL = 1e-12  # bisection tolerance on the radius axis


def unit_ball_volume(d: int) -> float:
    """Volume of the unit ball of R^d: pi^(d/2) / Gamma(d/2 + 1)."""
    if not (isinstance(d, int) and d >= 1):
        raise ValueError("dimension must be a positive integer")
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


@dataclass(frozen=True)
class RadialProfile:
    """Radial function on R^d given by a scalar profile of the radius.

    ``func`` must be pure and non-negative on (0, radius]; ``monotone``
    asserts it is non-increasing there.  ``singular_at_zero`` /
    ``singular_at_edge`` flag endpoint blow-up (or merely delicate endpoint
    behaviour) for the quadrature.
    """

    dim: int
    func: Callable[[float], float] = field(compare=True)
    radius: float
    monotone: bool
    singular_at_zero: bool = False
    singular_at_edge: bool = False
    label: str = ""

    def __post_init__(self):
        if not (isinstance(self.dim, int) and self.dim >= 1):
            raise ValueError("dimension must be a positive integer")
        if not self.radius > 0:
            raise ValueError("support radius must be > 0")

    def __call__(self, r: float) -> float:
        r = float(r)
        if r <= 0:
            raise ValueError("profile is defined for r > 0")
        if r > self.radius:
            return 0.0
        return self.func(r)

    def ball_volume(self) -> float:
        return unit_ball_volume(self.dim)

    def support_measure(self) -> float:
        """Lebesgue measure of the support ball in R^d."""
        if math.isinf(self.radius):
            return math.inf
        return unit_ball_volume(self.dim) * self.radius ** self.dim


def bertrand(alpha: float, beta: float) -> RadialProfile:
    """Power-log profile r |-> (-ln r)^beta * r^(-alpha) on (0, 1], d = 1.

    Construction never fails; integrability is decided at norm-computation
    time by the quadrature.  The evaluation clamps r to (0, 1 - 1e-15] so
    the (-ln r)^beta factor stays meaningful at the support edge, where it
    vanishes (beta > 0) or blows up (beta < 0).
    """
    alpha = float(alpha)
    beta = float(beta)

    def f(r: float) -> float:
        r = min(r, 1.0 - 1e-15)
        u = -math.log(r)  # > 0 after the clamp
        try:
            return math.exp(beta * math.log(u) + alpha * u)
        except OverflowError:
            return math.inf

    return RadialProfile(
        dim=1,
        func=f,
        radius=1.0,
        monotone=(alpha >= 0 and beta >= 0),
        singular_at_zero=(alpha > 0 or beta > 0),
        singular_at_edge=(beta < 0),
        label=f"bertrand(alpha={alpha:g}, beta={beta:g})",
    )


def constant_profile(c: float, radius: float = 1.0, d: int = 1) -> RadialProfile:
    c = float(c)
    if c < 0:
        raise ValueError("profile values must be >= 0")
    return RadialProfile(d, lambda r: c, float(radius), monotone=True,
                         label=f"constant({c:g})")


def linear_profile(radius: float = 1.0, d: int = 1) -> RadialProfile:
    """r |-> 1 - r/R on (0, R]."""
    radius = float(radius)
    return RadialProfile(d, lambda r: max(0.0, 1.0 - r / radius), radius,
                         monotone=True, label="linear")


def tent_profile(radius: float = 1.0, d: int = 1) -> RadialProfile:
    """Non-monotone test profile r |-> 1 - |2r/R - 1|, peaking at R/2."""
    radius = float(radius)
    return RadialProfile(d, lambda r: max(0.0, 1.0 - abs(2.0 * r / radius - 1.0)),
                         radius, monotone=False, label="tent")


# ---------------------------------------------------------------------------
# distribution function


def _monotone_superlevel_radius(p: RadialProfile, lam: float) -> float:
    """sup{r : profile(r) > lam} for a non-increasing profile, by bisection."""
    R = p.radius
    if math.isinf(R):
        # grow a finite bracket; the profile vanishes at infinity
        hi = 1.0
        while p(hi) > lam:
            hi *= 2.0
            if hi > 2.0 ** 60:
                raise ArithmeticError("profile does not vanish at infinity")
    else:
        if p(R) > lam:
            return R
        hi = R
    # establish the invariant: profile > lam at lo, <= lam at hi
    lo = hi * 1e-13
    if p(lo) <= lam:
        return 0.0
    while hi - lo > _R_TOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if p(mid) > lam:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=64)
def _scan(p: RadialProfile, n: int = 1536) -> Tuple[np.ndarray, np.ndarray]:
    """Cached radial sample of a finite-radius profile (geometric + uniform grid)."""
    R = p.radius
    if math.isinf(R):
        raise ValueError("scan requires a finite support radius")
    geo = np.geomspace(R * 1e-12, R * (1.0 - 1e-12), n // 2)
    lin = np.linspace(R * 1e-6, R * (1.0 - 1e-12), n // 2)
    rs = np.unique(np.concatenate([geo, lin]))
    vals = np.array([p(float(r)) for r in rs])
    return rs, vals


def _bisect_level(p: RadialProfile, lam: float, lo: float, hi: float, above_lo: bool) -> float:
    """Root of profile(r) = lam inside a bracket where the sign changes once."""
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (p(mid) > lam) == above_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _R_TOL * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def _superlevel_segments(p: RadialProfile, lam: float) -> list[Tuple[float, float]]:
    """Maximal radius intervals where profile > lam, from the cached scan."""
    rs, vals = _scan(p)
    above = vals > lam
    segments: list[Tuple[float, float]] = []
    start: Optional[float] = None
    if above[0]:
        start = 0.0  # scan starts at 1e-12 * R; the remainder is below tolerance
    for i in range(len(rs) - 1):
        if above[i] != above[i + 1]:
            r = _bisect_level(p, lam, float(rs[i]), float(rs[i + 1]), bool(above[i]))
            if above[i]:
                segments.append((start if start is not None else 0.0, r))
                start = None
            else:
                start = r
    if start is not None:
        segments.append((start, p.radius))
    return segments


def numeric_distribution(p: RadialProfile, lam: float,
                         spec: QuadratureSpec | None = None) -> float:
    """mes{x in R^d : |f(x)| > lam} for a radial function given by its profile.

    Monotone profiles invert by bisection on the radius; general profiles
    integrate the super-level indicator over spherical shells, i.e. sum
    omega_d * (r_hi^d - r_lo^d) over the level segments located on a dense
    radial scan.  ``spec`` is accepted for interface symmetry with the other
    numeric operations; the radial tolerance is fixed at 1e-12.
    """
    lam = float(lam)
    if lam < 0:
        raise ValueError("level must be >= 0")
    omega = unit_ball_volume(p.dim)
    if p.monotone:
        if lam == 0.0:
            return p.support_measure()
        r = _monotone_superlevel_radius(p, lam)
        return omega * r ** p.dim
    segments = _superlevel_segments(p, lam)
    return sum(omega * (hi ** p.dim - lo ** p.dim) for lo, hi in segments)


# ---------------------------------------------------------------------------
# rearrangements


@dataclass(frozen=True)
class RearrangedMap:
    """Evaluable decreasing rearrangement t |-> f#(t) of a radial profile."""

    support_measure: float
    singular_at_zero: bool
    singular_at_edge: bool
    func: Callable[[float], float] = field(compare=True)
    label: str = ""

    def __call__(self, t: float) -> float:
        t = float(t)
        if t < 0:
            raise ValueError("t must be >= 0")
        return self.func(t)


_LEVELS = 1024  # tabulation levels for the non-monotone inverse


@lru_cache(maxsize=32)
def _tabulated_inverse(p: RadialProfile) -> Tuple[np.ndarray, np.ndarray, float]:
    """(t grid ascending, f# values, sup) for a bounded non-monotone profile."""
    rs, vals = _scan(p)
    k = int(np.argmax(vals))
    sup = float(vals[k])
    # parabolic refinement of the peak over the three straddling samples
    if 0 < k < len(rs) - 1:
        xs = rs[k - 1:k + 2].astype(float)
        ys = vals[k - 1:k + 2].astype(float)
        denom = (xs[0] - xs[1]) * (xs[0] - xs[2]) * (xs[1] - xs[2])
        if denom != 0:
            a = (xs[2] * (ys[1] - ys[0]) + xs[1] * (ys[0] - ys[2]) + xs[0] * (ys[2] - ys[1])) / denom
            b = (xs[2] ** 2 * (ys[0] - ys[1]) + xs[1] ** 2 * (ys[2] - ys[0]) + xs[0] ** 2 * (ys[1] - ys[2])) / denom
            if a < 0:
                r_peak = -b / (2 * a)
                if xs[0] < r_peak < xs[2]:
                    sup = max(sup, p(float(r_peak)))
    if not math.isfinite(sup):
        raise ValueError("tabulated inverse requires a bounded profile")
    j = np.arange(_LEVELS + 1)
    lams = sup * np.sin(0.5 * math.pi * j / _LEVELS) ** 2  # clusters at 0 and sup
    omega = unit_ball_volume(p.dim)
    ts = np.empty(_LEVELS + 1)
    for i, lam in enumerate(lams):
        segs = _superlevel_segments(p, float(lam))
        ts[i] = sum(omega * (hi ** p.dim - lo ** p.dim) for lo, hi in segs)
    # ts decreases as the level rises; dedupe flats for interpolation
    t_asc = ts[::-1].copy()
    lam_asc = lams[::-1].copy()
    keep = np.concatenate([[True], np.diff(t_asc) > 0])
    return t_asc[keep], lam_asc[keep], sup


def numeric_rearrange(p: RadialProfile) -> RearrangedMap:
    """Decreasing rearrangement of a radial profile as an evaluable map.

    Non-increasing profiles invert exactly through the ball-volume change of
    variables; other profiles fall back to the monotone inverse of the
    numeric distribution function, tabulated on a level grid.
    """
    omega = unit_ball_volume(p.dim)
    total = p.support_measure()
    if p.monotone:
        d = p.dim
        radius = p.radius

        def f_sharp(t: float) -> float:
            if math.isfinite(total) and t >= total:
                return 0.0
            if t == 0.0:
                if p.singular_at_zero:
                    return math.inf
                return p(min(radius, 1.0) * 1e-15 if math.isfinite(radius) else 1e-15)
            return p((t / omega) ** (1.0 / d))

        return RearrangedMap(total, p.singular_at_zero, p.singular_at_edge,
                             f_sharp, label=f"rearranged {p.label}")

    t_grid, lam_grid, sup = _tabulated_inverse(p)

    def f_sharp_tab(t: float) -> float:
        if t >= t_grid[-1]:
            return 0.0
        if t <= t_grid[0]:
            return sup
        return float(np.interp(t, t_grid, lam_grid))

    return RearrangedMap(float(t_grid[-1]), False, False, f_sharp_tab,
                         label=f"rearranged {p.label}")


def symmetric_rearrangement(source: Union[MonotoneStep, RearrangedMap], d: int) -> RadialProfile:
    """Symmetric decreasing rearrangement on R^d: f*(x) = f#(omega_d |x|^d)."""
    omega = unit_ball_volume(d)
    if isinstance(source, MonotoneStep):
        total = float(source.support_measure())
        evaluate = lambda t: float(source.eval(t))
        singular = False
    else:
        total = source.support_measure
        evaluate = source
        singular = source.singular_at_zero
    radius = math.inf if math.isinf(total) else (total / omega) ** (1.0 / d)
    if radius == 0.0:
        return constant_profile(0.0, radius=1.0, d=d)
    return RadialProfile(d, lambda r: evaluate(omega * r ** d), radius,
                         monotone=True, singular_at_zero=singular,
                         label="symmetric rearrangement")


def superlevel_measure(m: RearrangedMap, lam: float) -> float:
    """mes{t : f#(t) > lam} = sup of the super-level interval of a non-increasing map."""
    lam = float(lam)
    if lam < 0:
        raise ValueError("level must be >= 0")
    total = m.support_measure
    if math.isinf(total):
        hi = 1.0
        while m(hi) > lam:
            hi *= 2.0
            if hi > 2.0 ** 60:
                return math.inf
    else:
        if total == 0.0:
            return 0.0
        if m(total * (1.0 - 1e-14)) > lam:
            return total
        hi = total
    lo = hi * 1e-15
    if m(lo) <= lam:
        return 0.0
    while hi - lo > _R_TOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if m(mid) > lam:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_to_step(m: RearrangedMap, n: int = 2000) -> MonotoneStep:
    """Staircase approximation of a numeric rearrangement (midpoint sampling).

    Convenience for feeding numeric rearrangements into the exact maximal
    machinery; the sampling error is not tracked, so exact invariants should
    not be asserted on the result.
    """
    total = m.support_measure
    if math.isinf(total):
        raise ValueError("sampling requires a finite support measure")
    if total == 0.0:
        return MonotoneStep()
    cuts = np.concatenate([
        np.geomspace(total * 1e-9, total * 0.1, n // 2),
        np.linspace(total * 0.1, total, n // 2 + 1)[1:],
    ])
    cuts = np.unique(cuts)
    breaks = []
    values = []
    prev = 0.0
    last = math.inf
    for c in cuts:
        mid = 0.5 * (prev + float(c))
        v = min(m(mid), last)  # clamp tiny interpolation wiggles, keep monotone
        if not math.isfinite(v):
            raise ValueError("rearrangement is not finite away from 0; cannot sample")
        breaks.append(Fraction(float(c)))
        values.append(Fraction(v))
        last = v
        prev = float(c)
    return MonotoneStep(breaks, values)
