"""Dominance checks: FSD, SSD, ICX and distorted dominance (H-DSD) with its
risk-loving and mixed variants.

Every averse-side check reduces to the sign of the gap curve

    D(u) = int_0^u (Q_X(t) - Q_Y(t)) dH(t),   u in [0, 1],

and ``X`` dominates ``Y`` iff ``D(u) >= 0`` everywhere.  Numerically the test
is ``D(u) >= -TOL * (H(u) - H(0))``: the H-weighted average of ``Q_X - Q_Y``
over ``[0, u]`` may not fall below ``-TOL``.  This never accepts more than the
plain ``D(u) >= -TOL`` rule, and unlike it does not start accepting again
when ``H(u)`` becomes tiny (``t**k`` for large ``k``).  Risk-loving checks
negate and swap the pair.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .distortions import Distortion, Identity
from .distributions import (
    DiscreteDistribution,
    Distribution,
    Family,
    LocationScaleDistribution,
    negate,
    same_family,
    standard_cdf,
)
from .errors import NotApplicableError
from .integrals import breakpoints_of, cumulative_integral, distorted_mean, standard_distorted_mean

TOL = 1e-9
_SCAN_POINTS = 4096
_ZERO = 1e-12
_SNAP = 1e-12


class Method(str, enum.Enum):
    EXACT_BREAKPOINT = "exact_breakpoint"
    QUADRATURE = "quadrature"
    SINGLE_CROSSING_SHORTCUT = "single_crossing_shortcut"


@dataclass(frozen=True)
class DominanceVerdict:
    """Outcome of a dominance query.

    ``min_gap`` is the smallest value of the gap curve (capped at 0) and
    ``min_average_gap`` the smallest ``D(u) / (H(u) - H(0))``, which is what
    ``holds`` is decided on.  ``witness`` is the ``u`` attaining that
    average; it is set whenever the check fails.  ``error_bound`` estimates the
    numerical uncertainty of ``min_gap`` (zero for exact evaluations).
    """

    holds: bool
    min_gap: float
    method: Method
    witness: float | None = None
    error_bound: float = 0.0
    min_average_gap: float = math.nan

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class GapCurve:
    us: np.ndarray
    ds: np.ndarray

    def __iter__(self):
        return iter((self.us, self.ds))


@dataclass(frozen=True)
class CrossingInfo:
    single_crossing_from_below: bool
    crossing_point: float | None = None


def _verdict(min_gap: float, witness: float, method: Method, error_bound: float = 0.0, average=None) -> DominanceVerdict:
    """Verdict from the minimum gap; ``average`` overrides the decision quantity."""
    average = min_gap if average is None else average
    holds = bool(average >= -TOL)
    return DominanceVerdict(
        holds, float(min(min_gap, 0.0)), method, None if holds else float(witness), error_bound, float(average)
    )


def _running_average(p: np.ndarray, delta: np.ndarray, h: Distortion) -> np.ndarray:
    """``D(p_j) / (H(p_j) - H(0))`` for j >= 1, free of underflow.

    With ``R_j = (H(p_{j-1}) - H(0)) / (H(p_j) - H(0))`` the average obeys
    ``r_j = R_j r_{j-1} + (1 - R_j) delta_j``, a convex combination.
    """
    ratio = np.asarray(h._mass_ratio(p[:-1], p[1:]), dtype=float)
    out = np.empty(delta.size)
    r = 0.0
    for j in range(delta.size):
        r = ratio[j] * r + (1.0 - ratio[j]) * delta[j]
        out[j] = r
    return out


def _merged_panels(x: DiscreteDistribution, y: DiscreteDistribution):
    """Merged breakpoints and the constant quantile difference on each panel."""
    p = np.unique(np.concatenate((x.cum, y.cum)))
    # levels that differ only by rounding (renormalised masses) are one level;
    # otherwise a sliver panel can carry a spurious quantile gap
    keep = np.concatenate(([True], np.diff(p) > _SNAP))
    p = p[keep]
    p[-1] = 1.0
    mid = 0.5 * (p[:-1] + p[1:])
    delta = x._ppf(mid) - y._ppf(mid)
    return p, delta


def _delta(x: Distribution, y: Distribution):
    return lambda t: x._ppf(t) - y._ppf(t)


# -- gap curve ----------------------------------------------------------------

def gap_curve(x: Distribution, y: Distribution, h: Distortion, us=None) -> GapCurve:
    """Sampled ``D(u) = int_0^u (Q_X - Q_Y) dH``.

    Two discrete inputs are evaluated exactly at the merged breakpoints
    ``0 = p_0 < ... < p_m = 1``: the difference of quantiles is a constant
    ``delta_i`` on each ``(p_{i-1}, p_i)``, so ``D(p_j)`` is a finite sum of
    ``delta_i (H(p_i) - H(p_{i-1}))``.  Other pairs go through quadrature.
    If ``us`` is given, the curve is returned at exactly those points.
    """
    if isinstance(x, DiscreteDistribution) and isinstance(y, DiscreteDistribution):
        p, delta = _merged_panels(x, y)
        hp = np.asarray(h._value(p), dtype=float)
        ds = np.concatenate(([0.0], np.cumsum(delta * np.diff(hp))))
        if us is None:
            return GapCurve(p, ds)
        us = np.asarray(us, dtype=float)
        j = np.clip(np.searchsorted(p, us, side="right") - 1, 0, delta.size - 1)
        vals = ds[j] + delta[j] * (np.asarray(h._value(us), dtype=float) - hp[j])
        return GapCurve(us, vals)
    extra_t = breakpoints_of(x, y)
    if us is None:
        edges, cum, _ = cumulative_integral(_delta(x, y), h, extra_t=extra_t)
        return GapCurve(_u_of_s(h, edges), cum)
    us = np.asarray(us, dtype=float)
    s_u = np.asarray(h._value(us), dtype=float)
    edges, cum, _ = cumulative_integral(_delta(x, y), h, extra_t=extra_t, extra_s=s_u)
    return GapCurve(us, np.interp(s_u, edges, cum))


def _u_of_s(h: Distortion, s: np.ndarray) -> np.ndarray:
    u = np.clip(np.asarray(h._inverse(s), dtype=float), 0.0, 1.0)
    u[0] = 0.0 if h.lower == 0.0 else u[0]
    return u


def _gap_verdict(x: Distribution, y: Distribution, h: Distortion) -> DominanceVerdict:
    """Full check through the gap curve, no shortcut."""
    if isinstance(x, DiscreteDistribution) and isinstance(y, DiscreteDistribution):
        curve = gap_curve(x, y, h)
        # Between breakpoints both D and TOL * H are affine in H(u), so checking
        # the breakpoints decides the whole interval.
        avg = _running_average(*_merged_panels(x, y), h)
        j = int(np.argmin(avg))
        return _verdict(float(np.min(curve.ds)), curve.us[j + 1], Method.EXACT_BREAKPOINT, average=avg[j])
    edges, cum, err = cumulative_integral(_delta(x, y), h, extra_t=breakpoints_of(x, y))
    width = edges[1:] - edges[0]
    avg = cum[1:] / width
    j = int(np.argmin(avg))
    witness = float(np.clip(h._inverse(edges[j + 1]), 0.0, 1.0))
    return _verdict(float(np.min(cum)), witness, Method.QUADRATURE, err, avg[j])


# -- single crossing ----------------------------------------------------------

def detect_single_crossing(x: Distribution, y: Distribution) -> CrossingInfo:
    """Whether ``F_X - F_Y`` changes sign exactly once, from ``-`` to ``+``.

    ``crossing_point`` is the probability level where ``Q_X - Q_Y`` turns
    negative.  Touching without a strict sign change is not a crossing.
    """
    fam = same_family(x, y)
    if fam is not None:
        return _location_scale_crossing(x, y, fam)
    if isinstance(x, DiscreteDistribution) and isinstance(y, DiscreteDistribution):
        support = np.union1d(x.values, y.values)
        diff = np.asarray(x.cdf(support)) - np.asarray(y.cdf(support))
        if _compressed_signs(diff) != [-1, 1]:
            return CrossingInfo(False)
        p, delta = _merged_panels(x, y)
        first_neg = int(np.nonzero(delta < -_ZERO)[0][0])
        return CrossingInfo(True, float(p[first_neg]))
    t = _scan_grid(x, y)
    delta = x._ppf(t) - y._ppf(t)
    if _compressed_signs(delta) != [1, -1]:
        return CrossingInfo(False)
    first_neg = int(np.nonzero(delta < -_ZERO)[0][0])
    return CrossingInfo(True, float(t[first_neg]))


def _compressed_signs(values: np.ndarray) -> list[int]:
    signs = np.sign(np.where(np.abs(values) <= _ZERO, 0.0, values))
    signs = signs[signs != 0]
    if signs.size == 0:
        return []
    keep = np.concatenate(([True], signs[1:] != signs[:-1]))
    return [int(s) for s in signs[keep]]


def _scan_grid(x: Distribution, y: Distribution) -> np.ndarray:
    geo = 2.0 ** -np.arange(1, 41)
    mids = []
    bps = breakpoints_of(x, y)
    if bps.size > 1:
        mids = 0.5 * (bps[:-1] + bps[1:])
    t = np.concatenate((np.linspace(0.0, 1.0, _SCAN_POINTS + 1)[1:-1], geo, 1.0 - geo, mids))
    return np.unique(np.clip(t, 1e-12, 1.0 - 1e-12))


def _location_scale_crossing(x: LocationScaleDistribution, y: LocationScaleDistribution, fam: Family) -> CrossingInfo:
    if not (x.mu >= y.mu and x.sigma < y.sigma):
        return CrossingInfo(False)
    z = (x.mu - y.mu) / (y.sigma - x.sigma)
    if fam in (Family.UNIFORM, Family.CONSTANT) and not 0.0 < z < 1.0:
        return CrossingInfo(False)
    return CrossingInfo(True, float(standard_cdf(fam, z)))


def check_t3_shortcut(x: Distribution, y: Distribution, h: Distortion) -> DominanceVerdict:
    """Single-crossing shortcut: dominance iff the H-distorted means are ordered.

    With ``Q_X - Q_Y`` positive and then negative, ``D`` rises and then falls,
    so its minimum over [0, 1] is ``min(0, D(1))``.  For a same-family
    location-scale pair ``D(1) = (mu_X - mu_Y) - E_H(Z) (sigma_Y - sigma_X)``.
    """
    if not detect_single_crossing(x, y).single_crossing_from_below:
        raise NotApplicableError("distributions are not single-crossing from below")
    fam = same_family(x, y)
    mass = h.upper - h.lower
    if fam is not None:
        end_gap = (x.mu - y.mu) * mass - standard_distorted_mean(fam, h) * (y.sigma - x.sigma)
    else:
        end_gap = distorted_mean(x, h) - distorted_mean(y, h)
    return _verdict(end_gap, 1.0, Method.SINGLE_CROSSING_SHORTCUT, average=min(end_gap / mass, 0.0))


# -- dominance checks ---------------------------------------------------------

def check_fsd(x: Distribution, y: Distribution) -> DominanceVerdict:
    """``Q_X >= Q_Y`` everywhere; ``min_gap`` is the smallest quantile difference."""
    if isinstance(x, DiscreteDistribution) and isinstance(y, DiscreteDistribution):
        p, delta = _merged_panels(x, y)
        i = int(np.argmin(delta))
        return _verdict(min(delta[i], 0.0), p[i], Method.EXACT_BREAKPOINT)
    fam = same_family(x, y)
    if fam is not None and fam is not Family.UNIFORM and x.sigma != y.sigma:
        # unbounded standard member: a slope difference loses in one tail
        return _verdict(-math.inf, 0.0 if x.sigma > y.sigma else 1.0, Method.QUADRATURE)
    if fam is not None:
        ends = [x.mu - y.mu, (x.mu + x.sigma) - (y.mu + y.sigma)] if fam is Family.UNIFORM else [x.mu - y.mu]
        i = int(np.argmin(ends))
        return _verdict(min(ends[i], 0.0), float(i), Method.EXACT_BREAKPOINT)
    t = _scan_grid(x, y)
    delta = x._ppf(t) - y._ppf(t)
    i = int(np.argmin(delta))
    return _verdict(min(delta[i], 0.0), t[i], Method.QUADRATURE)


def check_hdsd(x: Distribution, y: Distribution, h: Distortion, shortcut: bool = True) -> DominanceVerdict:
    """``X >=_H Y``: SSD between the H-distorted laws.

    Discrete pairs are decided exactly.  Other pairs use the single-crossing
    shortcut when it applies (and ``shortcut`` is true), else quadrature.
    """
    discrete_pair = isinstance(x, DiscreteDistribution) and isinstance(y, DiscreteDistribution)
    if shortcut and not discrete_pair and detect_single_crossing(x, y).single_crossing_from_below:
        return check_t3_shortcut(x, y, h)
    return _gap_verdict(x, y, h)


def check_ssd(x: Distribution, y: Distribution) -> DominanceVerdict:
    return check_hdsd(x, y, Identity())


def check_icx(x: Distribution, y: Distribution) -> DominanceVerdict:
    """Increasing convex order, via ``-Y >=_2 -X``."""
    return check_ssd(negate(y), negate(x))


def check_risk_loving_hdsd(x: Distribution, y: Distribution, h: Distortion, shortcut: bool = True) -> DominanceVerdict:
    """Risk-loving H-DSD, via ``-Y >=_H -X``.

    The witness refers to the gap curve of the negated pair.
    """
    return check_hdsd(negate(y), negate(x), h, shortcut)


def check_mixed(x: Distribution, y: Distribution, h1: Distortion, h2: Distortion) -> DominanceVerdict:
    """``X >=_{H1} Y`` and risk-loving ``X >=^{H2} Y`` together."""
    averse = check_hdsd(x, y, h1)
    loving = check_risk_loving_hdsd(x, y, h2)
    worst = averse if averse.min_gap <= loving.min_gap else loving
    holds = averse.holds and loving.holds
    witness = None if holds else (averse if not averse.holds else loving).witness
    return DominanceVerdict(
        holds,
        min(averse.min_gap, loving.min_gap),
        worst.method,
        witness,
        max(averse.error_bound, loving.error_bound),
    )
