"""Proportional (reversed) hazards component systems and their extremes.

Every component of a system is a power transform of one shared baseline:
``SURVIVAL_POWER`` components have survival F-bar**a, ``CDF_POWER`` components
have cdf F**a.  Selecting the first ``n`` components gives the series
(minimum) and parallel (maximum) lifetimes X_{1:n} and X_{n:n}; for the
matching kind those collapse to a single power with the prefix-sum exponent.

Everything is evaluated on the log scale so that tiny exponents and both tails
stay accurate.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .baseline import TINY, BaselineModel, hazard_pair, lemma_ratio_log, log1mexp
from .errors import ConfigurationError, InvalidParameterError


class ComponentKind(enum.Enum):
    SURVIVAL_POWER = "survival_power"
    CDF_POWER = "cdf_power"


@dataclass(frozen=True)
class ProportionalComponent:
    exponent: float
    kind: ComponentKind

    def __post_init__(self):
        if not (self.exponent > 0 and np.isfinite(self.exponent)):
            raise InvalidParameterError(f"component exponent must be positive, got {self.exponent!r}")


@dataclass(frozen=True, eq=False)
class ProportionalSystem:
    baseline: BaselineModel
    components: tuple
    label: str = ""

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ConfigurationError("a system needs at least one component")
        kinds = {c.kind for c in comps}
        if len(kinds) != 1:
            raise ConfigurationError("mixed-kind systems are not supported")
        object.__setattr__(self, "components", comps)
        cum = np.cumsum([c.exponent for c in comps])
        cum.setflags(write=False)
        object.__setattr__(self, "_cumulative", cum)

    @property
    def kind(self) -> ComponentKind:
        return self.components[0].kind

    @property
    def exponents(self) -> tuple:
        return tuple(c.exponent for c in self.components)

    @property
    def cumulative_exponents(self) -> np.ndarray:
        return self._cumulative

    def __len__(self) -> int:
        return len(self.components)

    def prefix_exponent(self, n: int) -> float:
        """Sum of the first ``n`` exponents (the system exponent when N = n)."""
        _check_n(self, n)
        return float(self._cumulative[n - 1])


def survival_power_system(baseline, exponents: Sequence[float], label="") -> ProportionalSystem:
    return ProportionalSystem(
        baseline, tuple(ProportionalComponent(float(a), ComponentKind.SURVIVAL_POWER) for a in exponents), label
    )


def cdf_power_system(baseline, exponents: Sequence[float], label="") -> ProportionalSystem:
    return ProportionalSystem(
        baseline, tuple(ProportionalComponent(float(a), ComponentKind.CDF_POWER) for a in exponents), label
    )


def iid_system(baseline, size: int, kind=ComponentKind.SURVIVAL_POWER, label="") -> ProportionalSystem:
    """``size`` identical copies of the baseline (every exponent 1)."""
    kind = ComponentKind(kind)
    return ProportionalSystem(baseline, tuple(ProportionalComponent(1.0, kind) for _ in range(size)), label)


def _check_n(system, n):
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= len(system):
        raise IndexError(f"n={n!r} outside 1..{len(system)} for system {system.label!r}")


def _out(arr):
    arr = np.asarray(arr, dtype=float)
    return arr[()] if arr.ndim == 0 else arr


def _clamp(surv):
    return np.where(surv < TINY, 0.0, surv)


def _require(system, kind, what):
    if system.kind is not kind:
        raise ConfigurationError(f"{what} is defined for {kind.value} systems, got {system.kind.value}")


def _log_min_survival(system, n, x):
    _check_n(system, n)
    if system.kind is ComponentKind.SURVIVAL_POWER:
        return system.prefix_exponent(n) * system.baseline.log_survival(x)
    # independent product of 1 - F**a
    log_F = system.baseline.log_cdf(x)
    total = np.zeros_like(log_F)
    for a in system.exponents[:n]:
        total = total + log1mexp(-a * log_F)
    return total


def _log_max_cdf(system, n, x):
    _check_n(system, n)
    if system.kind is ComponentKind.CDF_POWER:
        return system.prefix_exponent(n) * system.baseline.log_cdf(x)
    log_S = system.baseline.log_survival(x)
    total = np.zeros_like(log_S)
    for a in system.exponents[:n]:
        total = total + log1mexp(-a * log_S)
    return total


def min_survival(system: ProportionalSystem, n: int, x):
    """Survival of X_{1:n}: F-bar(x)**Lambda_n for survival-power systems."""
    x = np.asarray(x, dtype=float)
    return _out(_clamp(np.exp(_log_min_survival(system, n, x))))


def min_cdf(system: ProportionalSystem, n: int, x):
    x = np.asarray(x, dtype=float)
    return _out(-np.expm1(_log_min_survival(system, n, x)))


def max_cdf(system: ProportionalSystem, n: int, x):
    """Cdf of X_{n:n}: F(x)**Lambda_n for cdf-power systems."""
    x = np.asarray(x, dtype=float)
    return _out(np.exp(_log_max_cdf(system, n, x)))


def max_survival(system: ProportionalSystem, n: int, x):
    x = np.asarray(x, dtype=float)
    return _out(_clamp(-np.expm1(_log_max_cdf(system, n, x))))


def min_reversed_hazard(system: ProportionalSystem, n: int, x):
    """Lambda_n r(x) / (F-bar(x)**-Lambda_n - 1); NaN at or below the lower bound."""
    _require(system, ComponentKind.SURVIVAL_POWER, "min_reversed_hazard")
    x = np.asarray(x, dtype=float)
    lam = system.prefix_exponent(n)
    log_S = system.baseline.log_survival(x)
    r = hazard_pair(system.baseline).hazard(x)
    val = r * lemma_ratio_log(lam, log_S)
    return _out(np.where((log_S == 0) | ~np.isfinite(log_S), np.nan, val))


def max_hazard(system: ProportionalSystem, n: int, x):
    """Lambda_n rbar(x) / (F(x)**-Lambda_n - 1); NaN at the support ends."""
    _require(system, ComponentKind.CDF_POWER, "max_hazard")
    x = np.asarray(x, dtype=float)
    lam = system.prefix_exponent(n)
    log_F = system.baseline.log_cdf(x)
    rbar = hazard_pair(system.baseline).reversed_hazard(x)
    val = rbar * lemma_ratio_log(lam, log_F)
    return _out(np.where((log_F == 0) | ~np.isfinite(log_F), np.nan, val))


def _power_density(lam, log_base, f):
    with np.errstate(invalid="ignore", over="ignore"):
        scale = np.where(lam == 1.0, 1.0, np.exp((lam - 1.0) * log_base))
        # a vanishing baseline density wins over an overflowing power
        return np.where(f == 0, 0.0, lam * scale * f)


def min_density(system: ProportionalSystem, n: int, x):
    """Lambda_n F-bar**(Lambda_n - 1) f, the derivative of :func:`min_cdf`."""
    _require(system, ComponentKind.SURVIVAL_POWER, "min_density")
    x = np.asarray(x, dtype=float)
    lam = system.prefix_exponent(n)
    b = system.baseline
    return _out(_power_density(lam, b.log_survival(x), b.density(x)))


def max_density(system: ProportionalSystem, n: int, x):
    _require(system, ComponentKind.CDF_POWER, "max_density")
    x = np.asarray(x, dtype=float)
    lam = system.prefix_exponent(n)
    b = system.baseline
    return _out(_power_density(lam, b.log_cdf(x), b.density(x)))


def table(fn, system: ProportionalSystem, ns: Sequence[int], xs) -> np.ndarray:
    """Stack ``fn(system, n, xs)`` into an array of shape (len(ns), len(xs))."""
    xs = np.asarray(xs, dtype=float)
    return np.vstack([np.broadcast_to(fn(system, int(n), xs), xs.shape) for n in ns])
