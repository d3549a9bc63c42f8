"""Grid verification of the st, hr, rh and lr orders.

All checks are semi-decisions: ``holds=True`` means no violation was found on
the grid.  Ratio checks skip points whose denominator is at or below 1e-300
(counted as indeterminate); a decrease smaller than
``max(1e-9, 1e-9 * |ratio|)`` is treated as floating-point noise.

Every check asks whether X is smaller than Y.  For the reverse direction swap
the arguments.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from . import power_systems as ps
from .baseline import TINY
from .grid import EvaluationGrid, default_grid  # noqa: F401  (re-exported)
from .power_systems import ProportionalSystem

ST_SLACK = 1e-12
MONO_SLACK = 1e-9

Curve = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]


class Order(enum.Enum):
    ST = "st"
    HR = "hr"
    RH = "rh"
    LR = "lr"


@dataclass(frozen=True, eq=False)
class OrderVerdict:
    """Outcome of one order check.

    ``holds`` is ``None`` when every grid point was indeterminate.  Witnesses
    are ``(x, lhs, rhs)``: for st the two survivals at x, for ratio orders the
    ratio at the previous valid point and at x.
    """

    order: Order
    holds: Optional[bool]
    witnesses: tuple
    indeterminate_count: int
    grid: Optional[EvaluationGrid] = field(default=None, repr=False)

    def __bool__(self):
        return bool(self.holds)


@dataclass(frozen=True, eq=False)
class MonotoneVerdict:
    """Monotonicity of a curve along x, or of a table along its n axis.

    Witnesses are ``(x, previous, current)`` along x and
    ``(n_prev, n_next, x, previous, current)`` along n.
    """

    axis: str
    increasing: bool
    holds: Optional[bool]
    witnesses: tuple
    indeterminate_count: int

    def __bool__(self):
        return bool(self.holds)


def _eval(curve: Curve, grid: EvaluationGrid) -> np.ndarray:
    if callable(curve):
        vals = curve(grid.xs)
    else:
        vals = getattr(curve, "values", curve)
    vals = np.asarray(vals, dtype=float)
    if vals.shape != grid.xs.shape:
        vals = np.broadcast_to(vals, grid.xs.shape)
    return vals


def _drops(prev, cur, increasing):
    slack = np.maximum(MONO_SLACK, MONO_SLACK * np.abs(prev))
    if increasing:
        return cur < prev - slack
    return cur > prev + slack


def _monotone_1d(values, xs, increasing=True):
    """Violations of monotonicity along the valid (finite) entries."""
    values = np.asarray(values, dtype=float)
    valid = np.isfinite(values)
    idx = np.flatnonzero(valid)
    indeterminate = int(values.size - idx.size)
    if idx.size < 2:
        return None, (), indeterminate
    v = values[idx]
    bad = np.flatnonzero(_drops(v[:-1], v[1:], increasing))
    witnesses = tuple((float(xs[idx[k + 1]]), float(v[k]), float(v[k + 1])) for k in bad)
    return not witnesses, witnesses, indeterminate


def safe_ratio(num, den) -> np.ndarray:
    """num/den, NaN where den <= 1e-300 or either side is non-finite."""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    ok = (den > TINY) & np.isfinite(num) & np.isfinite(den)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(ok, num / np.where(ok, den, 1.0), np.nan)


def check_monotone(values, xs, increasing: bool = True) -> MonotoneVerdict:
    holds, witnesses, indeterminate = _monotone_1d(values, np.asarray(xs, dtype=float), increasing)
    return MonotoneVerdict("x", increasing, holds, witnesses, indeterminate)


def check_monotone_in_n(tab, ns, xs, increasing: bool = True) -> MonotoneVerdict:
    """Check each column of ``tab`` (shape len(ns) x len(xs)) along n."""
    tab = np.asarray(tab, dtype=float)
    ns = list(ns)
    witnesses = []
    indeterminate = int(np.count_nonzero(~np.isfinite(tab)))
    compared = False
    for k in range(len(ns) - 1):
        a, b = tab[k], tab[k + 1]
        ok = np.isfinite(a) & np.isfinite(b)
        compared = compared or bool(ok.any())
        bad = np.flatnonzero(ok & _drops(np.where(ok, a, 0.0), np.where(ok, b, 0.0), increasing))
        witnesses.extend((ns[k], ns[k + 1], float(xs[j]), float(a[j]), float(b[j])) for j in bad)
    witnesses.sort(key=lambda w: (w[2], w[0]))
    if len(ns) < 2:
        return MonotoneVerdict("n", increasing, True, (), indeterminate)
    holds = (not witnesses) if compared else None
    return MonotoneVerdict("n", increasing, holds, tuple(witnesses), indeterminate)


def _ratio_verdict(order, num, den, grid):
    holds, witnesses, indeterminate = _monotone_1d(safe_ratio(num, den), grid.xs, increasing=True)
    return OrderVerdict(order, holds, witnesses, indeterminate, grid)


def check_st(survX: Curve, survY: Curve, grid: EvaluationGrid) -> OrderVerdict:
    """X <=_st Y: survival of X never exceeds that of Y (slack 1e-12)."""
    sx, sy = _eval(survX, grid), _eval(survY, grid)
    ok = np.isfinite(sx) & np.isfinite(sy)
    indeterminate = int(np.count_nonzero(~ok))
    bad = np.flatnonzero(ok & (sx > sy + ST_SLACK))
    witnesses = tuple((float(grid.xs[j]), float(sx[j]), float(sy[j])) for j in bad)
    holds = (not witnesses) if ok.any() else None
    return OrderVerdict(Order.ST, holds, witnesses, indeterminate, grid)


def check_hr(survX: Curve, survY: Curve, grid: EvaluationGrid) -> OrderVerdict:
    """X <=_hr Y: survY / survX nondecreasing in x."""
    return _ratio_verdict(Order.HR, _eval(survY, grid), _eval(survX, grid), grid)


def check_rh(cdfX: Curve, cdfY: Curve, grid: EvaluationGrid) -> OrderVerdict:
    """X <=_rh Y: cdfY / cdfX nondecreasing in x."""
    return _ratio_verdict(Order.RH, _eval(cdfY, grid), _eval(cdfX, grid), grid)


def check_lr(densX: Curve, densY: Curve, grid: EvaluationGrid) -> OrderVerdict:
    """X <=_lr Y: densY / densX nondecreasing where both densities are positive."""
    fx, fy = _eval(densX, grid), _eval(densY, grid)
    both = (fx > TINY) & (fy > TINY)
    return _ratio_verdict(Order.LR, np.where(both, fy, np.nan), np.where(both, fx, np.nan), grid)


def check_hazard_dominance(hazX: Curve, hazY: Curve, grid: EvaluationGrid) -> OrderVerdict:
    """The pointwise form of X <=_hr Y: r_X >= r_Y - 1e-9 at every grid point."""
    hx, hy = _eval(hazX, grid), _eval(hazY, grid)
    ok = np.isfinite(hx) & np.isfinite(hy)
    bad = np.flatnonzero(ok & (hx < hy - MONO_SLACK))
    witnesses = tuple((float(grid.xs[j]), float(hx[j]), float(hy[j])) for j in bad)
    holds = (not witnesses) if ok.any() else None
    return OrderVerdict(Order.HR, holds, witnesses, int(np.count_nonzero(~ok)), grid)


def check_samplesize_rh_monotone(system: ProportionalSystem, n1: int, n2: int, grid: EvaluationGrid) -> OrderVerdict:
    """X_{1:n1} >=_rh X_{1:n2} for n1 <= n2, i.e. F_{1:n1}/F_{1:n2} nondecreasing in x."""
    if n2 < n1:
        raise ValueError("need n1 <= n2")
    small = ps.min_cdf(system, n1, grid.xs)
    large = ps.min_cdf(system, n2, grid.xs)
    return check_rh(large, small, grid)
