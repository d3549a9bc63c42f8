"""Random-sample-size extremes: pmf mixtures and a Monte Carlo oracle.

N = n selects the first n components of a system, so the distribution of the
random minimum (maximum) is the p(n)-weighted mixture of the fixed-n curves.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import power_systems as ps
from .errors import ConfigurationError, InvalidParameterError
from .grid import EvaluationGrid
from .power_systems import ComponentKind, ProportionalSystem

PMF_TOL = 1e-12
BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class SampleSizePMF:
    support: tuple
    probs: tuple

    def __post_init__(self):
        support = tuple(int(n) for n in self.support)
        probs = tuple(float(p) for p in self.probs)
        if not support or len(support) != len(probs):
            raise ConfigurationError("pmf needs matching, nonempty support and probabilities")
        if support[0] < 1 or any(b <= a for a, b in zip(support, support[1:])):
            raise ConfigurationError("pmf support must be strictly increasing positive integers")
        if any(not (p > 0) for p in probs):
            raise ConfigurationError("pmf probabilities must be positive")
        if abs(math.fsum(probs) - 1.0) > PMF_TOL:
            raise ConfigurationError(f"pmf probabilities sum to {math.fsum(probs)!r}, not 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_pairs(cls, pairs) -> "SampleSizePMF":
        pairs = sorted((int(n), float(p)) for n, p in pairs)
        return cls(tuple(n for n, _ in pairs), tuple(p for _, p in pairs))

    @classmethod
    def degenerate(cls, n: int) -> "SampleSizePMF":
        return cls((n,), (1.0,))

    @property
    def max_n(self) -> int:
        return self.support[-1]

    @property
    def span(self) -> range:
        """Support atoms together with the integers between them."""
        return range(self.support[0], self.support[-1] + 1)

    def check_fits(self, system: ProportionalSystem) -> None:
        if self.max_n > len(system):
            raise ConfigurationError(
                f"pmf reaches n={self.max_n} but system {system.label!r} has {len(system)} components"
            )


class MixtureKind(enum.Enum):
    MIN_CDF = "min_cdf"
    MIN_SURVIVAL = "min_survival"
    MAX_CDF = "max_cdf"
    MAX_SURVIVAL = "max_survival"


@dataclass(frozen=True, eq=False)
class MixtureCurve:
    grid: EvaluationGrid
    values: np.ndarray
    kind: MixtureKind


_FIXED_N = {
    MixtureKind.MIN_CDF: ps.min_cdf,
    MixtureKind.MIN_SURVIVAL: ps.min_survival,
    MixtureKind.MAX_CDF: ps.max_cdf,
    MixtureKind.MAX_SURVIVAL: ps.max_survival,
}


def mixture_values(system: ProportionalSystem, pmf: SampleSizePMF, x, kind: MixtureKind) -> np.ndarray:
    """Sum over the pmf support of p(n) times the fixed-n curve, at arbitrary x."""
    pmf.check_fits(system)
    fn = _FIXED_N[MixtureKind(kind)]
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for n, p in zip(pmf.support, pmf.probs):
        total = total + p * fn(system, n, x)
    return total


def _curve(system, pmf, grid, kind):
    values = mixture_values(system, pmf, grid.xs, kind)
    values.setflags(write=False)
    return MixtureCurve(grid=grid, values=values, kind=kind)


def random_min_cdf(system, pmf, grid) -> MixtureCurve:
    return _curve(system, pmf, grid, MixtureKind.MIN_CDF)


def random_min_survival(system, pmf, grid) -> MixtureCurve:
    return _curve(system, pmf, grid, MixtureKind.MIN_SURVIVAL)


def random_max_cdf(system, pmf, grid) -> MixtureCurve:
    return _curve(system, pmf, grid, MixtureKind.MAX_CDF)


def random_max_survival(system, pmf, grid) -> MixtureCurve:
    return _curve(system, pmf, grid, MixtureKind.MAX_SURVIVAL)


class Extreme(enum.Enum):
    MIN = "min"
    MAX = "max"


def _bisect_increasing(fn, target, lower, upper, xtol=1e-12, max_iter=400):
    """Vectorised root of fn(x) = target for nondecreasing fn on (lower, upper)."""
    target = np.asarray(target, dtype=float)
    lo = np.full(target.shape, lower if math.isfinite(lower) else -1.0)
    if not math.isfinite(lower):
        while np.any(fn(lo) > target):
            lo = np.where(fn(lo) > target, 2 * lo - 1.0, lo)
    if math.isfinite(upper):
        hi = np.full(target.shape, float(upper))
    else:
        hi = np.full(target.shape, max(lo.max(), 0.0) + 1.0)
        for _ in range(2100):
            low = fn(hi) < target
            if not np.any(low):
                break
            hi = np.where(low, 2 * hi + 1.0, hi)
    for _ in range(max_iter):
        width = hi - lo
        if np.all(width <= xtol * np.maximum(1.0, np.abs(hi))):
            break
        mid = 0.5 * (lo + hi)
        below = fn(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _component_draws(system: ProportionalSystem, log_u: np.ndarray) -> np.ndarray:
    """Inverse-transform lifetimes; column i uses component i's marginal."""
    b = system.baseline
    expo = np.asarray(system.exponents)[None, :]
    if system.kind is ComponentKind.SURVIVAL_POWER:
        # U = F-bar(T)**a  =>  log F-bar(T) = log U / a
        target = log_u / expo
        if b.inverse_logsf is not None:
            return b.inverse_logsf(target)
        return _bisect_increasing(lambda t: -b.log_survival(t), -target, b.lower, b.upper)
    target = log_u / expo
    if b.inverse_logcdf is not None:
        return b.inverse_logcdf(target)
    return _bisect_increasing(b.log_cdf, target, b.lower, b.upper)


def _block_rng(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(block),))
    return np.random.Generator(np.random.PCG64(ss))


def mc_sample_extreme(
    system: ProportionalSystem,
    pmf: SampleSizePMF,
    mode,
    count: int,
    seed: int,
    block_size: int = BLOCK_SIZE,
) -> np.ndarray:
    """Draw ``count`` replicates of X_{1:N} (mode min) or X_{N:N} (mode max).

    Replicates are generated in fixed blocks, each from its own stream keyed by
    (seed, block index), so the output does not depend on how blocks are
    scheduled.
    """
    mode = Extreme(mode)
    if count < 1:
        raise InvalidParameterError("count must be at least 1")
    pmf.check_fits(system)
    size = pmf.max_n
    support = np.asarray(pmf.support)
    probs = np.asarray(pmf.probs)
    sub = ProportionalSystem(system.baseline, system.components[:size], system.label)
    out = np.empty(count)
    for block, start in enumerate(range(0, count, block_size)):
        m = min(block_size, count - start)
        rng = _block_rng(seed, block)
        ns = support[rng.choice(support.size, size=m, p=probs)] if support.size > 1 else np.full(m, support[0])
        u = rng.random((m, size))
        # guard log(0); U is uniform on [0, 1)
        u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
        t = _component_draws(sub, np.log(u))
        active = np.arange(size)[None, :] < ns[:, None]
        if mode is Extreme.MIN:
            out[start:start + m] = np.where(active, t, np.inf).min(axis=1)
        else:
            out[start:start + m] = np.where(active, t, -np.inf).max(axis=1)
    return out


def ks_distance(sample: np.ndarray, cdf) -> float:
    """Sup-distance between the empirical cdf of ``sample`` and ``cdf``."""
    xs = np.sort(np.asarray(sample, dtype=float))
    n = xs.size
    F = np.asarray(cdf(xs), dtype=float)
    upper = np.arange(1, n + 1) / n - F
    lower = F - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def analytic_cdf(system: ProportionalSystem, pmf: SampleSizePMF, mode):
    kind = MixtureKind.MIN_CDF if Extreme(mode) is Extreme.MIN else MixtureKind.MAX_CDF
    return lambda x: mixture_values(system, pmf, x, kind)
