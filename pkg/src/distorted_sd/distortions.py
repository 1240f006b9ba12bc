"""Probability distortions ``H: [0, 1] -> [0, 1]`` and their comparison.

Built-in families:

``Power(k)``   ``t**k``, ``k > 0``
``Identity``   ``t``
``PhiM(m)``    ``(t**(1/m) + t**m) / 2``, concave then convex for ``m > 1``
``GP(p)``      ``max(p - (1 - t), 0)``, convex with a kink at ``1 - p``; note
               ``GP(p)(1) = p``, so it carries total mass ``p`` rather than 1
``Custom``     user supplied map, with numerical derivative and inverse

``dual(H)`` is ``t -> 1 - H(1 - t)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NotInvertibleError, SingularDerivativeError

_BOUNDARY_TOL = 1e-12
_FD_STEP = 1e-5


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _bisect_inverse(func, z, lo: float = 0.0, hi: float = 1.0, iters: int = 80) -> np.ndarray:
    """Vectorised ``sup{t : func(t) <= z}`` on ``[lo, hi]`` for non-decreasing ``func``."""
    z = np.asarray(z, dtype=float)
    a = np.full(z.shape, lo)
    b = np.full(z.shape, hi)
    for _ in range(iters):
        mid = 0.5 * (a + b)
        below = np.asarray(func(mid)) <= z
        a = np.where(below, mid, a)
        b = np.where(below, b, mid)
    return 0.5 * (a + b)


class Distortion:
    """Base class.  Subclasses implement ``_value``, ``_deriv``, ``_second``, ``_inverse``."""

    invertible = True
    smooth = True
    trusted_derivative = True

    # value range; only GP and its dual differ from (0, 1)
    @property
    def lower(self) -> float:
        return float(self._value(np.float64(0.0)))

    @property
    def upper(self) -> float:
        return float(self._value(np.float64(1.0)))

    def _value(self, t):
        raise NotImplementedError

    def _deriv(self, t):
        t = np.asarray(t, dtype=float)
        lo = np.maximum(t - _FD_STEP, 0.0)
        hi = np.minimum(t + _FD_STEP, 1.0)
        return (self._value(hi) - self._value(lo)) / (hi - lo)

    def _second(self, t):
        t = np.asarray(t, dtype=float)
        h = _FD_STEP
        return (self._value(t + h) - 2.0 * self._value(t) + self._value(t - h)) / (h * h)

    def _inverse(self, z):
        return _bisect_inverse(self._value, z)

    def _mass_ratio(self, a, b):
        """``(H(a) - H(0)) / (H(b) - H(0))`` for ``a <= b``; 1 where both vanish."""
        lo = self.lower
        num = np.asarray(self._value(a), dtype=float) - lo
        den = np.asarray(self._value(b), dtype=float) - lo
        return np.divide(num, den, out=np.ones_like(den), where=den > 0.0)

    def eval(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(~((t >= 0.0) & (t <= 1.0))):
            raise DomainError("distortion argument must lie in [0, 1]")
        return _out(self._value(t))

    __call__ = eval

    def derivative(self, t):
        return _out(self._deriv(np.asarray(t, dtype=float)))

    def inverse(self, z):
        if not self.invertible:
            raise NotInvertibleError(f"{self} is not invertible")
        z = np.asarray(z, dtype=float)
        if np.any(~((z >= 0.0) & (z <= 1.0))):
            raise DomainError("inverse argument must lie in [0, 1]")
        return _out(self._inverse(z))

    def dual(self) -> "Distortion":
        return Dual(self)


@dataclass(frozen=True)
class Identity(Distortion):
    def _value(self, t):
        return np.asarray(t, dtype=float)

    def _deriv(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def _second(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def _inverse(self, z):
        return np.asarray(z, dtype=float)

    def dual(self):
        return self

    def __str__(self):
        return "identity"


@dataclass(frozen=True)
class Power(Distortion):
    k: float

    def __post_init__(self):
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError(f"Power requires finite k > 0, got {self.k}")

    def _value(self, t):
        return np.asarray(t, dtype=float) ** self.k

    def _deriv(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return self.k * t ** (self.k - 1.0)

    def _second(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.k * (self.k - 1.0) * t ** (self.k - 2.0)

    def _inverse(self, z):
        return np.asarray(z, dtype=float) ** (1.0 / self.k)

    def _mass_ratio(self, a, b):
        # (a/b)**k stays representable long after a**k and b**k underflow
        a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        q = np.divide(a, b, out=np.ones_like(b), where=b > 0.0)
        return q ** self.k

    def __str__(self):
        return f"power:{self.k:g}"


@dataclass(frozen=True)
class PhiM(Distortion):
    m: float

    def __post_init__(self):
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"PhiM requires finite m > 0, got {self.m}")

    def _value(self, t):
        t = np.asarray(t, dtype=float)
        return 0.5 * (t ** (1.0 / self.m) + t ** self.m)

    def _deriv(self, t):
        t = np.asarray(t, dtype=float)
        m = self.m
        with np.errstate(divide="ignore"):
            return 0.5 * (t ** (1.0 / m - 1.0) / m + m * t ** (m - 1.0))

    def _second(self, t):
        t = np.asarray(t, dtype=float)
        m = self.m
        with np.errstate(divide="ignore", invalid="ignore"):
            return 0.5 * ((1.0 / m) * (1.0 / m - 1.0) * t ** (1.0 / m - 2.0)
                          + m * (m - 1.0) * t ** (m - 2.0))

    def __str__(self):
        return f"phim:{self.m:g}"


@dataclass(frozen=True)
class GP(Distortion):
    """``max(p - (1 - t), 0)``; its generalised inverse is ``z + 1 - p`` for ``z > 0``."""

    p: float
    invertible = False
    smooth = False

    def __post_init__(self):
        if not (0.0 < self.p <= 1.0):
            raise DomainError(f"GP requires p in (0, 1], got {self.p}")

    def _value(self, t):
        return np.maximum(np.asarray(t, dtype=float) - (1.0 - self.p), 0.0)

    def _deriv(self, t):
        return np.where(np.asarray(t, dtype=float) > 1.0 - self.p, 1.0, 0.0)

    def _second(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def _inverse(self, z):
        return np.minimum(np.asarray(z, dtype=float) + (1.0 - self.p), 1.0)

    def __str__(self):
        return f"gp:{self.p:g}"


@dataclass(frozen=True)
class Dual(Distortion):
    base: Distortion

    @property
    def invertible(self):
        return self.base.invertible

    @property
    def smooth(self):
        return self.base.smooth

    @property
    def trusted_derivative(self):
        return self.base.trusted_derivative

    def _value(self, t):
        return 1.0 - self.base._value(1.0 - np.asarray(t, dtype=float))

    def _deriv(self, t):
        return self.base._deriv(1.0 - np.asarray(t, dtype=float))

    def _second(self, t):
        return -self.base._second(1.0 - np.asarray(t, dtype=float))

    def _inverse(self, z):
        if isinstance(self.base, GP):
            # dual(GP(p)) = 1 - (p - t)_+ rises linearly from 1 - p on [0, p]
            z = np.asarray(z, dtype=float)
            return np.clip(z - (1.0 - self.base.p), 0.0, self.base.p)
        return 1.0 - self.base._inverse(1.0 - np.asarray(z, dtype=float))

    def dual(self):
        return self.base

    def __str__(self):
        return f"dual({self.base})"


@dataclass(frozen=True, eq=False)
class Custom(Distortion):
    """User-supplied distortion.

    ``func`` must map [0, 1] onto [0, 1] with ``func(0) = 0`` and ``func(1) = 1``.
    Missing derivatives use central differences (step 1e-5); a missing inverse
    uses bisection to about 1e-16.
    """

    func: Callable
    deriv: Callable | None = None
    inv: Callable | None = None
    label: str = "custom"
    trusted_derivative = False

    def __post_init__(self):
        grid = np.linspace(0.0, 1.0, 1001)
        vals = np.asarray(self._value(grid), dtype=float)
        if vals.shape != grid.shape or not np.all(np.isfinite(vals)):
            raise DomainError("custom distortion must return finite values on [0, 1]")
        if abs(vals[0]) > _BOUNDARY_TOL or abs(vals[-1] - 1.0) > _BOUNDARY_TOL:
            raise DomainError("custom distortion must satisfy H(0) = 0 and H(1) = 1")
        if np.any(np.diff(vals) < -_BOUNDARY_TOL):
            raise DomainError("custom distortion must be non-decreasing")

    def _value(self, t):
        t = np.asarray(t, dtype=float)
        out = np.asarray(self.func(t), dtype=float)
        if out.shape != t.shape:
            out = np.vectorize(self.func, otypes=[float])(t)
        return out

    def _deriv(self, t):
        if self.deriv is not None:
            return np.asarray(self.deriv(np.asarray(t, dtype=float)), dtype=float)
        return super()._deriv(t)

    def _inverse(self, z):
        if self.inv is not None:
            return np.asarray(self.inv(np.asarray(z, dtype=float)), dtype=float)
        return super()._inverse(z)

    def __str__(self):
        return self.label


# -- operations ---------------------------------------------------------------

def dual(h: Distortion) -> Distortion:
    return h.dual()


def arrow_pratt(h: Distortion, u):
    """Arrow-Pratt measure ``-H''(u) / H'(u)`` for ``u`` in (0, 1)."""
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0.0) & (u < 1.0))):
        raise DomainError("arrow_pratt needs u in (0, 1)")
    if not h.smooth:
        raise SingularDerivativeError(f"{h} is not twice differentiable")
    d1 = np.asarray(h._deriv(u), dtype=float)
    if np.any(d1 == 0.0) or np.any(~np.isfinite(d1)):
        raise SingularDerivativeError(f"derivative of {h} vanishes or diverges at u")
    return _out(-np.asarray(h._second(u), dtype=float) / d1)


class ConvexityOrder(str, enum.Enum):
    MORE_CONVEX = "more_convex"
    LESS_CONVEX = "less_convex"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def compare_convexity(h: Distortion, g: Distortion, grid_n: int = 512, tol: float = 1e-10) -> ConvexityOrder:
    """Classify ``H`` against ``G`` by the shape of ``H(G^{-1}(z))``.

    Second differences on ``grid_n`` interior points of a uniform grid: all
    ``>= -tol`` means ``H`` is more convex than ``G``, all ``<= tol`` less
    convex, both equal, neither incomparable.
    """
    if grid_n < 64:
        raise DomainError(f"grid_n must be at least 64, got {grid_n}")
    if not g.invertible:
        raise NotInvertibleError(f"{g} is not invertible on (0, 1)")
    z = np.arange(1, grid_n + 1) / (grid_n + 1.0)
    f = np.asarray(h._value(np.clip(g._inverse(z), 0.0, 1.0)), dtype=float)
    d2 = f[2:] - 2.0 * f[1:-1] + f[:-2]
    convex = bool(np.all(d2 >= -tol))
    concave = bool(np.all(d2 <= tol))
    if convex and concave:
        return ConvexityOrder.EQUAL
    if convex:
        return ConvexityOrder.MORE_CONVEX
    if concave:
        return ConvexityOrder.LESS_CONVEX
    return ConvexityOrder.INCOMPARABLE


def at_least_as_convex(h: Distortion, g: Distortion, grid_n: int = 512) -> bool:
    """``H >=_cx G`` in the weak sense (more convex or equal)."""
    return compare_convexity(h, g, grid_n) in (ConvexityOrder.MORE_CONVEX, ConvexityOrder.EQUAL)


def is_convex(h: Distortion, grid_n: int = 512) -> bool:
    return at_least_as_convex(h, Identity(), grid_n)


def is_concave(h: Distortion, grid_n: int = 512) -> bool:
    return compare_convexity(h, Identity(), grid_n) in (ConvexityOrder.LESS_CONVEX, ConvexityOrder.EQUAL)


def parse_distortion(text: str) -> Distortion:
    """Parse ``"power:k"``, ``"identity"``, ``"phim:m"`` or ``"gp:p"``."""
    if not isinstance(text, str) or not text.strip():
        raise DomainError("distortion spec must be a non-empty string")
    name, _, arg = text.strip().lower().partition(":")
    if name == "identity":
        if arg:
            raise DomainError("distortion 'identity' takes no parameter")
        return Identity()
    builders = {"power": Power, "phim": PhiM, "gp": GP}
    if name not in builders:
        raise DomainError(f"unknown distortion {name!r} (expected power, identity, phim or gp)")
    try:
        value = float(arg)
    except ValueError:
        raise DomainError(f"distortion {name!r} needs a numeric parameter, got {arg!r}") from None
    return builders[name](value)
