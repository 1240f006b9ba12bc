"""Distributions known through their quantile function and CDF.

Two representations are supported:

* :class:`DiscreteDistribution` -- finitely many atoms, handled exactly.
* :class:`LocationScaleDistribution` -- ``Q(t) = mu + sigma * G^{-1}(t)`` for a
  standard member ``G`` of the uniform, logistic or normal family.  ``sigma = 0``
  is the point mass at ``mu`` (family ``CONSTANT``).

Quantiles use the right-continuous convention ``Q(p) = sup{x : F(x) <= p}``,
so for a discrete law ``Q(p) = x_i`` on ``[F_{i-1}, F_i)``.

Standard members: uniform on ``[0, 1]``, logistic with ``Q(t) = log(t/(1-t))``,
normal ``N(0, 1)``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, UnsupportedOperationError
from .special import logistic_cdf, logistic_ppf, norm_cdf, norm_ppf

_MASS_TOL = 1e-9


class Family(str, enum.Enum):
    UNIFORM = "uniform"
    LOGISTIC = "logistic"
    NORMAL = "normal"
    CONSTANT = "constant"


class Extreme(str, enum.Enum):
    MAX = "max"
    MIN = "min"


def _check_probability(p, closed: bool = False) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if closed:
        bad = ~((arr >= 0.0) & (arr <= 1.0))
    else:
        bad = ~((arr > 0.0) & (arr < 1.0))
    if np.any(bad):
        first = arr[bad].flat[0] if arr.ndim else float(arr)
        interval = "[0, 1]" if closed else "(0, 1)"
        raise DomainError(f"probability must lie in {interval}, got {first!r}")
    return arr


def _scalar_or_array(x: np.ndarray):
    return float(x) if np.ndim(x) == 0 else x


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Finite distribution with strictly increasing ``values``.

    Duplicate values are merged by summing their masses; zero masses are
    dropped.  Masses must sum to one within 1e-9 and are then renormalised.
    """

    values: np.ndarray
    probs: np.ndarray
    cum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        probs = np.asarray(self.probs, dtype=float).ravel()
        if values.size == 0:
            raise DomainError("discrete distribution needs at least one value")
        if values.shape != probs.shape:
            raise DomainError(
                f"values and probs differ in length ({values.size} vs {probs.size})"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("values must be finite")
        if np.any(~np.isfinite(probs)) or np.any(probs < 0.0):
            raise DomainError("probs must be finite and non-negative")
        total = probs.sum()
        if abs(total - 1.0) > _MASS_TOL:
            raise DomainError(f"probs must sum to 1, got {total!r}")
        uniq, inverse = np.unique(values, return_inverse=True)
        merged = np.zeros(uniq.size)
        np.add.at(merged, inverse, probs)
        keep = merged > 0.0
        uniq, merged = uniq[keep], merged[keep] / merged[keep].sum()
        cum = np.concatenate(([0.0], np.cumsum(merged)))
        cum[-1] = 1.0
        for name, arr in (("values", uniq), ("probs", merged), ("cum", cum)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __repr__(self):
        return f"DiscreteDistribution(values={self.values.tolist()}, probs={self.probs.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(self.probs, other.probs)

    __hash__ = None

    @property
    def breakpoints(self) -> np.ndarray:
        """Cumulative levels ``0 = F_0 < F_1 < ... < F_n = 1``."""
        return self.cum

    def _ppf(self, p: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.cum[1:], p, side="right")
        return self.values[np.minimum(idx, self.values.size - 1)]

    def quantile(self, p):
        return _scalar_or_array(self._ppf(_check_probability(p)))

    def cdf(self, x):
        idx = np.searchsorted(self.values, np.asarray(x, dtype=float), side="right")
        return _scalar_or_array(self.cum[idx])

    def mean(self) -> float:
        return float(np.dot(self.values, self.probs))

    def support_min(self) -> float:
        return float(self.values[0])


@dataclass(frozen=True)
class LocationScaleDistribution:
    """``Q(t) = mu + sigma * G^{-1}(t)`` for a standard family member ``G``."""

    family: Family
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        family = Family(self.family)
        mu, sigma = float(self.mu), float(self.sigma)
        if not (math.isfinite(mu) and math.isfinite(sigma)):
            raise DomainError("mu and sigma must be finite")
        if sigma < 0.0:
            raise DomainError(f"sigma must be >= 0, got {sigma}")
        if sigma == 0.0 or family is Family.CONSTANT:
            family, sigma = Family.CONSTANT, 0.0
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    def _std_ppf(self, p: np.ndarray) -> np.ndarray:
        if self.family is Family.UNIFORM:
            return p
        if self.family is Family.LOGISTIC:
            return logistic_ppf(p)
        if self.family is Family.NORMAL:
            return norm_ppf(p)
        return np.zeros_like(p)

    def _ppf(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.family is Family.CONSTANT:
            return np.full(p.shape, self.mu)
        return self.mu + self.sigma * np.asarray(self._std_ppf(p))

    def quantile(self, p):
        return _scalar_or_array(self._ppf(_check_probability(p)))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.family is Family.CONSTANT:
            return _scalar_or_array(np.where(x >= self.mu, 1.0, 0.0))
        return _scalar_or_array(standard_cdf(self.family, (x - self.mu) / self.sigma))

    def mean(self) -> float:
        if self.family is Family.UNIFORM:
            return self.mu + 0.5 * self.sigma
        return self.mu

    def support_min(self) -> float:
        if self.family in (Family.UNIFORM, Family.CONSTANT):
            return self.mu
        return -math.inf


Distribution = Union[DiscreteDistribution, LocationScaleDistribution]


def standard_cdf(family: Family, z):
    """CDF ``G`` of the standard member of ``family``."""
    family = Family(family)
    z = np.asarray(z, dtype=float)
    if family is Family.UNIFORM:
        out = np.clip(z, 0.0, 1.0)
    elif family is Family.LOGISTIC:
        out = logistic_cdf(z)
    elif family is Family.NORMAL:
        out = norm_cdf(z)
    else:
        out = np.where(z >= 0.0, 1.0, 0.0)
    return _scalar_or_array(np.asarray(out))


# -- constructors -----------------------------------------------------------

def discrete(values, probs=None) -> DiscreteDistribution:
    """Discrete law; equal masses when ``probs`` is omitted."""
    values = np.asarray(values, dtype=float).ravel()
    if probs is None:
        probs = np.full(values.size, 1.0 / max(values.size, 1))
    return DiscreteDistribution(values, probs)


def uniform(a: float = 0.0, b: float = 1.0) -> LocationScaleDistribution:
    if not b >= a:
        raise DomainError(f"uniform requires a <= b, got a={a}, b={b}")
    return LocationScaleDistribution(Family.UNIFORM, a, b - a)


def logistic(mu: float = 0.0, sigma: float = 1.0) -> LocationScaleDistribution:
    return LocationScaleDistribution(Family.LOGISTIC, mu, sigma)


def normal(mu: float = 0.0, sigma: float = 1.0) -> LocationScaleDistribution:
    return LocationScaleDistribution(Family.NORMAL, mu, sigma)


def constant(c: float) -> LocationScaleDistribution:
    return LocationScaleDistribution(Family.CONSTANT, c, 0.0)


# -- operations ---------------------------------------------------------------

def quantile(d: Distribution, p):
    """``Q_d(p)`` for ``p`` in (0, 1); raises :class:`DomainError` otherwise."""
    return d.quantile(p)


def cdf(d: Distribution, x):
    return d.cdf(x)


def expectation(d: Distribution) -> float:
    return d.mean()


def negate(d: Distribution) -> Distribution:
    """Distribution of ``-X``."""
    if isinstance(d, DiscreteDistribution):
        return DiscreteDistribution(-d.values[::-1], d.probs[::-1])
    if d.family is Family.UNIFORM:
        return LocationScaleDistribution(Family.UNIFORM, -(d.mu + d.sigma), d.sigma)
    return LocationScaleDistribution(d.family, -d.mu, d.sigma)


def order_statistic_extreme(d: Distribution, k: int, which: Extreme | str = Extreme.MAX) -> DiscreteDistribution:
    """Law of the maximum (``F^k``) or minimum (``1 - (1-F)^k``) of ``k`` iid draws."""
    if not isinstance(d, DiscreteDistribution):
        raise UnsupportedOperationError("order-statistic transform needs a discrete distribution")
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    which = Extreme(which)
    if which is Extreme.MAX:
        cum = d.cum ** k
    else:
        cum = 1.0 - (1.0 - d.cum) ** k
    probs = np.diff(cum)
    keep = probs > 0.0
    return DiscreteDistribution(d.values[keep], probs[keep] / probs[keep].sum())


def support_min(d: Distribution) -> float:
    return d.support_min()


def same_family(x: Distribution, y: Distribution) -> Family | None:
    """Common location-scale family of a pair, treating point masses as members of every family."""
    if not (isinstance(x, LocationScaleDistribution) and isinstance(y, LocationScaleDistribution)):
        return None
    if x.family is Family.CONSTANT:
        return y.family
    if y.family is Family.CONSTANT or x.family is y.family:
        return x.family
    return None


# -- JSON specs ------------------------------------------------------------

_REJECTED = {"cauchy": "Cauchy has no finite mean"}


def from_spec(spec) -> Distribution:
    """Build a distribution from a JSON-like dict (or JSON text)."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise DomainError(f"malformed distribution JSON: {exc.msg}") from exc
    if not isinstance(spec, dict):
        raise DomainError("distribution spec must be a JSON object")
    kind = spec.get("type")
    if not isinstance(kind, str):
        raise DomainError("field 'type' is missing or not a string")
    kind = kind.lower()
    if kind in _REJECTED:
        raise DomainError(f"field 'type': {kind!r} rejected ({_REJECTED[kind]})")

    def number(name, default=None):
        if name not in spec:
            if default is None:
                raise DomainError(f"field {name!r} is required for type {kind!r}")
            return default
        value = spec[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DomainError(f"field {name!r} must be a number")
        return float(value)

    try:
        if kind == "discrete":
            values = spec.get("values")
            if not isinstance(values, list) or not values:
                raise DomainError("field 'values' must be a non-empty list")
            probs = spec.get("probs")
            if probs is not None and not isinstance(probs, list):
                raise DomainError("field 'probs' must be a list")
            return discrete(values, probs)
        if kind in ("logistic", "normal"):
            return LocationScaleDistribution(Family(kind), number("mu", 0.0), number("sigma", 1.0))
        if kind == "uniform":
            return uniform(number("a", 0.0), number("b", 1.0))
        if kind == "constant":
            return constant(number("c"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"invalid {kind!r} spec: {exc}") from exc
    raise DomainError(f"field 'type': unknown distribution type {kind!r}")


def to_spec(d: Distribution) -> dict:
    """Inverse of :func:`from_spec`; floats are emitted at full precision."""
    if isinstance(d, DiscreteDistribution):
        return {"type": "discrete", "values": d.values.tolist(), "probs": d.probs.tolist()}
    if d.family is Family.CONSTANT:
        return {"type": "constant", "c": d.mu}
    if d.family is Family.UNIFORM:
        return {"type": "uniform", "a": d.mu, "b": d.mu + d.sigma}
    return {"type": d.family.value, "mu": d.mu, "sigma": d.sigma}
