"""Baseline lifetime distributions and the closed-form helpers built on them.

A :class:`BaselineModel` is a bundle of vectorised callables.  Log-scale
versions of the cdf and survival are optional; when they are missing they are
derived from whichever of ``cdf``/``survival`` is far from one, which keeps the
power transforms downstream accurate in both tails.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidParameterError

ArrayFn = Callable[[np.ndarray], np.ndarray]

# denominators at or below this are treated as underflowed
TINY = 1e-300


def log1mexp(a):
    """log(1 - exp(-a)) for a >= 0, accurate for small and large a."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = a <= math.log(2.0)
        out = np.where(small, np.log(-np.expm1(-np.where(small, a, 1.0))),
                       np.log1p(-np.exp(-np.where(small, 1.0, a))))
    return out


@dataclass(frozen=True, eq=False)
class BaselineModel:
    """Univariate absolutely continuous distribution on (lower, upper)."""

    name: str
    cdf: ArrayFn
    survival: ArrayFn
    density: ArrayFn
    lower: float = 0.0
    upper: float = math.inf
    logcdf: Optional[ArrayFn] = None
    logsf: Optional[ArrayFn] = None
    # closed-form inverses of log F and log F-bar, used by the sampler
    inverse_logcdf: Optional[ArrayFn] = None
    inverse_logsf: Optional[ArrayFn] = None

    def log_cdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.logcdf is not None:
            return self.logcdf(x)
        F = self.cdf(x)
        S = self.survival(x)
        with np.errstate(divide="ignore"):
            return np.where(F < 0.5, np.log(F), np.log1p(-S))

    def log_survival(self, x):
        x = np.asarray(x, dtype=float)
        if self.logsf is not None:
            return self.logsf(x)
        F = self.cdf(x)
        S = self.survival(x)
        with np.errstate(divide="ignore"):
            return np.where(S < 0.5, np.log(S), np.log1p(-F))

    def hazard(self, x):
        return hazard_pair(self).hazard(x)

    def reversed_hazard(self, x):
        return hazard_pair(self).reversed_hazard(x)


@dataclass(frozen=True, eq=False)
class HazardPair:
    hazard: ArrayFn
    reversed_hazard: ArrayFn


def _safe_ratio(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    ok = den > TINY
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(ok, num / np.where(ok, den, 1.0), np.nan)


def hazard_pair(model: BaselineModel) -> HazardPair:
    """Hazard f/F-bar and reversed hazard f/F.

    Points whose denominator has underflowed below ``TINY`` evaluate to NaN
    rather than raising.
    """

    def hazard(x):
        x = np.asarray(x, dtype=float)
        return _safe_ratio(model.density(x), model.survival(x))

    def reversed_hazard(x):
        x = np.asarray(x, dtype=float)
        return _safe_ratio(model.density(x), model.cdf(x))

    return HazardPair(hazard=hazard, reversed_hazard=reversed_hazard)


def make_exponential(rate: float = 1.0) -> BaselineModel:
    if not (rate > 0 and math.isfinite(rate)):
        raise InvalidParameterError(f"exponential rate must be positive, got {rate!r}")

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-rate * np.maximum(x, 0.0)), 0.0)

    def survival(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, np.exp(-rate * np.maximum(x, 0.0)), 1.0)

    def density(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, rate * np.exp(-rate * np.maximum(x, 0.0)), 0.0)

    def logsf(x):
        return -rate * np.maximum(np.asarray(x, dtype=float), 0.0)

    def logcdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, log1mexp(rate * np.maximum(x, 0.0)), -np.inf)

    def inverse_logsf(ls):
        return -np.asarray(ls, dtype=float) / rate

    def inverse_logcdf(lc):
        # F(x) = exp(lc)  =>  x = -log(1 - exp(lc)) / rate
        lc = np.asarray(lc, dtype=float)
        return -log1mexp(-lc) / rate

    return BaselineModel(
        name=f"exponential(rate={rate:g})",
        cdf=cdf,
        survival=survival,
        density=density,
        lower=0.0,
        upper=math.inf,
        logcdf=logcdf,
        logsf=logsf,
        inverse_logcdf=inverse_logcdf,
        inverse_logsf=inverse_logsf,
    )


def make_weibull(shape: float, scale: float = 1.0) -> BaselineModel:
    """Weibull with survival exp(-(x/scale)**shape).

    No closed-form inverse is attached on purpose; sampling goes through
    bisection so that path stays exercised.
    """
    if not (shape > 0 and scale > 0 and math.isfinite(shape) and math.isfinite(scale)):
        raise InvalidParameterError(f"weibull needs shape, scale > 0, got {shape!r}, {scale!r}")

    def cum_hazard(x):
        return (np.maximum(np.asarray(x, dtype=float), 0.0) / scale) ** shape

    def cdf(x):
        return -np.expm1(-cum_hazard(x))

    def survival(x):
        return np.exp(-cum_hazard(x))

    def density(x):
        x = np.asarray(x, dtype=float)
        z = np.maximum(x, 0.0) / scale
        with np.errstate(divide="ignore", invalid="ignore"):
            f = (shape / scale) * z ** (shape - 1.0) * np.exp(-(z ** shape))
        return np.where(x >= 0, f, 0.0)

    def logsf(x):
        return -cum_hazard(x)

    def logcdf(x):
        return log1mexp(cum_hazard(x))

    return BaselineModel(
        name=f"weibull(shape={shape:g}, scale={scale:g})",
        cdf=cdf,
        survival=survival,
        density=density,
        lower=0.0,
        upper=math.inf,
        logcdf=logcdf,
        logsf=logsf,
    )


def lemma_ratio(x, u):
    """x / (u**(-x) - 1), nonincreasing in x >= 0 for every u in [0, 1].

    Limits: -1/ln(u) at x = 0, +inf everywhere when u = 1, and 0 for x > 0
    when u = 0.
    """
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 1)) or np.any(np.isnan(u)):
        raise InvalidParameterError("lemma_ratio requires 0 <= u <= 1")
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise InvalidParameterError("lemma_ratio requires x >= 0")
    with np.errstate(divide="ignore"):
        log_u = np.log(u)
    out = lemma_ratio_log(x, log_u)
    return out[()] if out.ndim == 0 else out


def lemma_ratio_log(x, log_u):
    """:func:`lemma_ratio` parameterised by log(u), without domain checks."""
    x = np.asarray(x, dtype=float)
    log_u = np.asarray(log_u, dtype=float)
    x, log_u = np.broadcast_arrays(x, log_u)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        general = x / np.expm1(-x * log_u)
        at_zero = -1.0 / log_u
    out = np.where(x == 0, at_zero, general)
    out = np.where(log_u == 0, np.inf, out)
    out = np.where(np.isneginf(log_u) & (x > 0), 0.0, out)
    return out
