"""Distorted expectations, generalized Gini indices and an isotonicity harness.

A distorted expectation reweights the tail probabilities of ``X``:

    rho_phi(X) = -int_{-inf}^0 phi~(F(t)) dt + int_0^inf phi(1 - F(t)) dt
               = int_0^1 Q_X(p) dphi~(p),

with ``phi~(t) = 1 - phi(1 - t)`` the dual.  The quantile form is the one
computed; the tail form is kept as an independent cross-check.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .distortions import (
    ConvexityOrder,
    Custom,
    Distortion,
    Power,
    compare_convexity,
    dual,
)
from .distributions import DiscreteDistribution, Distribution, Family, expectation, support_min
from .dominance import check_hdsd, check_mixed, check_risk_loving_hdsd
from .errors import DomainError, NotInvertibleError
from .integrals import distorted_mean
from .kstar import Side

ISOTONICITY_TOL = 1e-8


def distorted_expectation(x: Distribution, phi: Distortion) -> float:
    """``rho_phi(X) = int_0^1 Q_X dphi~``.

    Discrete laws are summed exactly; continuous ones are integrated.
    ``phi = GP(p)`` gives ``int_0^p Q_X``.
    """
    return distorted_mean(x, dual(phi))


def tail_form_expectation(x: Distribution, phi: Distortion) -> float:
    """``int_0^inf phi(1 - F_X(t)) dt`` for non-negative ``X``.

    Agrees with :func:`distorted_expectation` and serves as a cross-check:
    exact for discrete and constant laws, ``scipy.integrate.quad`` otherwise.
    """
    if support_min(x) < 0.0:
        raise DomainError("the tail form is only used for non-negative distributions")
    if isinstance(x, DiscreteDistribution):
        v = x.values
        # 1 - F is constant on [v_i, v_{i+1})
        tails = np.asarray(phi._value(1.0 - x.cum[1:-1]), dtype=float)
        return float(v[0] * phi.upper + np.dot(np.diff(v), tails))
    if x.family is Family.CONSTANT:
        return float(x.mu * phi.upper)
    lo = x.mu
    hi = x.mu + x.sigma if x.family is Family.UNIFORM else math.inf

    def tail(t):
        return float(phi._value(np.clip(1.0 - x.cdf(t), 0.0, 1.0)))

    body = integrate.quad(tail, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    return float(lo * phi.upper + body)


@dataclass(frozen=True)
class RiskMeasureSpec:
    """A distorted expectation with a display label."""

    phi: Distortion
    label: str = ""

    def __call__(self, x: Distribution) -> float:
        return distorted_expectation(x, self.phi)


@dataclass(frozen=True)
class GiniReport:
    """``xi_n`` is ``int_0^inf (1 - F)^n dt``; ``classic_gini`` is ``1 - xi_2 / E(X)``
    (None when ``E(X) = 0``)."""

    n: int
    xi_n: float
    classic_gini: float | None


def generalized_gini(x: Distribution, n: int) -> GiniReport:
    """Generalized Gini index of order ``n`` for a non-negative law.

    ``xi_n`` equals the expected minimum of ``n`` independent draws.
    """
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if support_min(x) < 0.0:
        raise DomainError("generalized Gini indices need a non-negative distribution")
    n = int(n)
    xi_n = distorted_expectation(x, Power(n))
    mean = expectation(x)
    gini = None
    if mean > 0.0:
        xi_2 = xi_n if n == 2 else distorted_expectation(x, Power(2))
        gini = 1.0 - xi_2 / mean
    return GiniReport(n, float(xi_n), gini)


# -- isotonicity --------------------------------------------------------------

@dataclass(frozen=True)
class IsotonicityReport:
    """Outcome of :func:`isotonicity_check`.

    ``value_x``/``value_y`` are ``int_0^1 Q dphi`` (the distorted expectation
    with distortion ``dual(phi)``), the functional the dominance relation
    orders.  ``consistent`` is false only when dominance holds, ``phi`` is on
    the preserving side, and yet ``value_x < value_y - 1e-8``.
    """

    consistent: bool
    dominance_holds: bool
    preserving: bool | None
    value_x: float
    value_y: float
    untrusted_derivative: bool = False
    details: str = ""

    def __bool__(self):
        return self.consistent


def _on_preserving_side(h: Distortion, phi: Distortion, side: Side, h2: Distortion | None) -> bool:
    less = (ConvexityOrder.MORE_CONVEX, ConvexityOrder.EQUAL)
    if side is Side.AVERSE:
        # phi less convex than H
        return compare_convexity(h, phi) in less
    if side is Side.LOVING:
        # dual(phi) less convex than H, i.e. phi more convex than dual(H)
        return compare_convexity(phi, dual(h)) in less
    return compare_convexity(h, phi) in less and compare_convexity(phi, dual(h2)) in less


def isotonicity_check(
    x: Distribution,
    y: Distribution,
    h: Distortion,
    phi: Distortion,
    side: Side | str = Side.AVERSE,
    h2: Distortion | None = None,
) -> IsotonicityReport:
    """Test that a dominance relation orders a distorted expectation as it should.

    The averse relation ``X >=_H Y`` must order ``int Q dphi`` whenever ``phi``
    is less convex than ``H``; the loving one whenever ``phi`` is more convex
    than ``dual(H)``; the mixed one (``H`` averse, ``h2`` loving) under both
    conditions.  ``preserving`` is None when ``phi`` cannot be placed (no
    inverse).
    """
    side = Side(side)
    if side is Side.MIXED and h2 is None:
        raise DomainError("mixed side needs h2")
    if side is Side.AVERSE:
        holds = check_hdsd(x, y, h).holds
    elif side is Side.LOVING:
        holds = check_risk_loving_hdsd(x, y, h).holds
    else:
        holds = check_mixed(x, y, h, h2).holds
    try:
        preserving = _on_preserving_side(h, phi, side, h2)
    except NotInvertibleError:
        preserving = None
    vx = distorted_expectation(x, dual(phi))
    vy = distorted_expectation(y, dual(phi))
    consistent = not (holds and preserving) or vx >= vy - ISOTONICITY_TOL
    untrusted = isinstance(phi, Custom) and not phi.trusted_derivative
    details = ""
    if not consistent:
        details = f"dominance holds and {phi} is preserving, but {vx!r} < {vy!r}"
    return IsotonicityReport(consistent, holds, preserving, float(vx), float(vy), untrusted, details)
