"""Total positivity checks and variation-diminishing sign analysis.

A kernel K_n(x) is TP2 when every 2x2 minor K(n1,x1)K(n2,x2) - K(n2,x1)K(n1,x2)
with n1 < n2, x1 < x2 is nonnegative, and RR2 when every such minor is
nonpositive.  Given such a kernel and coefficients f_n(x) with a single sign
change in n and monotone in x, w(x) = sum_n f_n(x) K_n(x) changes sign at most
once in a predictable direction; four other hypothesis combinations give no
prediction.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigurationError, InconclusiveCaseError, NotClassifiableError
from .order_checks import MONO_SLACK

MINOR_SLACK = 1e-12
ZERO_BAND = 1e-12


class KernelKind(enum.Enum):
    TP2 = "TP2"
    RR2 = "RR2"


class Monotonicity(enum.Enum):
    INCREASING_IN_X = "increasing_in_x"
    DECREASING_IN_X = "decreasing_in_x"


class SignTraverse(enum.Enum):
    NEG_TO_POS_IN_N = "neg_to_pos_in_n"
    POS_TO_NEG_IN_N = "pos_to_neg_in_n"


class Direction(enum.Enum):
    NONE = "none"
    NEG_TO_POS = "neg_to_pos"
    POS_TO_NEG = "pos_to_neg"
    MULTIPLE = "multiple"


class Classification(enum.Enum):
    PROP21 = "Prop2.1"
    PROP22 = "Prop2.2"
    PROP23 = "Prop2.3"
    PROP24 = "Prop2.4"
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"
    CASE_IV = "CaseIV"

    @property
    def conclusive(self) -> bool:
        return self in PREDICTION


_K, _M, _T = KernelKind, Monotonicity, SignTraverse
CASE_TABLE = {
    (_K.RR2, _M.DECREASING_IN_X, _T.NEG_TO_POS_IN_N): Classification.PROP21,
    (_K.RR2, _M.INCREASING_IN_X, _T.POS_TO_NEG_IN_N): Classification.PROP22,
    (_K.TP2, _M.DECREASING_IN_X, _T.POS_TO_NEG_IN_N): Classification.PROP23,
    (_K.TP2, _M.INCREASING_IN_X, _T.NEG_TO_POS_IN_N): Classification.PROP24,
    (_K.RR2, _M.INCREASING_IN_X, _T.NEG_TO_POS_IN_N): Classification.CASE_I,
    (_K.RR2, _M.DECREASING_IN_X, _T.POS_TO_NEG_IN_N): Classification.CASE_II,
    (_K.TP2, _M.DECREASING_IN_X, _T.NEG_TO_POS_IN_N): Classification.CASE_III,
    (_K.TP2, _M.INCREASING_IN_X, _T.POS_TO_NEG_IN_N): Classification.CASE_IV,
}

# sign-change direction of w(x) predicted by each proposition
PREDICTION = {
    Classification.PROP21: Direction.POS_TO_NEG,
    Classification.PROP22: Direction.NEG_TO_POS,
    Classification.PROP23: Direction.POS_TO_NEG,
    Classification.PROP24: Direction.NEG_TO_POS,
}


@dataclass(frozen=True, eq=False)
class BivariateGrid:
    """Kernel values K_n(x); rows follow ``ns``, columns follow ``xs``."""

    ns: tuple
    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        ns = tuple(int(n) for n in self.ns)
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(ns), xs.size):
            raise ConfigurationError(f"kernel shape {values.shape} does not match ({len(ns)}, {xs.size})")
        if any(b <= a for a, b in zip(ns, ns[1:])) or np.any(np.diff(xs) <= 0):
            raise ConfigurationError("kernel axes must be strictly increasing")
        object.__setattr__(self, "ns", ns)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    @property
    def nonpositive_cells(self) -> tuple:
        rows, cols = np.nonzero(~(self.values > 0))
        return tuple((self.ns[i], float(self.xs[j])) for i, j in zip(rows, cols))


@dataclass(frozen=True)
class MinorVerdict:
    """Witnesses are ``(n1, n2, x1, x2, minor)`` with the offending minor value."""

    kind: KernelKind
    holds: bool
    witnesses: tuple
    excluded: tuple

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class SignChangeReport:
    signs: tuple
    change_count: int
    direction: Direction


@dataclass(frozen=True)
class VDCase:
    kernel_kind: KernelKind
    f_monotone: Monotonicity
    f_sign_traverse: SignTraverse
    classification: Classification


@dataclass(frozen=True)
class VDResult:
    case: VDCase
    report: SignChangeReport
    predicted: Direction
    conforms: bool


def count_sign_changes(values, zero_band: float = ZERO_BAND) -> SignChangeReport:
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("count_sign_changes needs a nonempty sequence")
    signs = np.where(np.abs(values) <= zero_band, 0, np.sign(values)).astype(int)
    nz = signs[signs != 0]
    changes = int(np.count_nonzero(nz[1:] != nz[:-1])) if nz.size else 0
    if changes == 0:
        direction = Direction.NONE
    elif changes == 1:
        direction = Direction.NEG_TO_POS if nz[0] < 0 else Direction.POS_TO_NEG
    else:
        direction = Direction.MULTIPLE
    return SignChangeReport(tuple(int(s) for s in signs), changes, direction)


def _minors(values, i1, i2, j1, j2):
    return values[i1, j1] * values[i2, j2] - values[i2, j1] * values[i1, j2]


def _check_minors(grid: BivariateGrid, kind: KernelKind, adjacent_only: bool = True) -> MinorVerdict:
    K = grid.values
    positive = K > 0
    nr, nc = K.shape
    if adjacent_only:
        pairs_n = [(i, i + 1) for i in range(nr - 1)]
        pairs_x = [(j, j + 1) for j in range(nc - 1)]
    else:
        pairs_n = [(i1, i2) for i1 in range(nr) for i2 in range(i1 + 1, nr)]
        pairs_x = [(j1, j2) for j1 in range(nc) for j2 in range(j1 + 1, nc)]
    witnesses = []
    if pairs_x:
        j1 = np.array([p[0] for p in pairs_x])
        j2 = np.array([p[1] for p in pairs_x])
        for i1, i2 in pairs_n:
            m = _minors(K, i1, i2, j1, j2)
            usable = positive[i1, j1] & positive[i2, j2] & positive[i2, j1] & positive[i1, j2]
            bad = m < -MINOR_SLACK if kind is KernelKind.TP2 else m > MINOR_SLACK
            for k in np.flatnonzero(usable & bad):
                witnesses.append((grid.ns[i1], grid.ns[i2], float(grid.xs[j1[k]]), float(grid.xs[j2[k]]), float(m[k])))
    return MinorVerdict(kind, not witnesses, tuple(witnesses), grid.nonpositive_cells)


def check_tp2(grid: BivariateGrid) -> MinorVerdict:
    """TP2 via adjacent 2x2 minors, which suffice for a positive grid."""
    return _check_minors(grid, KernelKind.TP2)


def check_rr2(grid: BivariateGrid) -> MinorVerdict:
    return _check_minors(grid, KernelKind.RR2)


def check_tp2_full(grid: BivariateGrid) -> MinorVerdict:
    """Brute-force TP2 over every pair of rows and every pair of columns."""
    return _check_minors(grid, KernelKind.TP2, adjacent_only=False)


def check_rr2_full(grid: BivariateGrid) -> MinorVerdict:
    return _check_minors(grid, KernelKind.RR2, adjacent_only=False)


def _row_monotone(row, increasing):
    row = row[np.isfinite(row)]
    prev, cur = row[:-1], row[1:]
    slack = np.maximum(MONO_SLACK, MONO_SLACK * np.abs(prev))
    if increasing:
        return bool(np.all(cur >= prev - slack))
    return bool(np.all(cur <= prev + slack))


def _pick(options, satisfied):
    """Choices consistent with the data; all of them when the data is degenerate."""
    return [o for o, ok in zip(options, satisfied) if ok]


def classify_vd_case(kernel: BivariateGrid, f_values, zero_band: float = ZERO_BAND) -> VDCase:
    """Map (kernel, f) to a conclusive proposition label or to one of Cases I-IV.

    A coordinate satisfied both ways (a constant row, a column with no sign
    change in n, a rank-one kernel) meets both hypotheses, so the reading that
    yields a proposition is taken.
    """
    f = np.asarray(f_values, dtype=float)
    if f.shape != kernel.values.shape:
        raise ConfigurationError("f grid must match the kernel shape")

    tp2, rr2 = check_tp2(kernel).holds, check_rr2(kernel).holds
    kinds = _pick([KernelKind.TP2, KernelKind.RR2], [tp2, rr2])
    if not kinds:
        raise NotClassifiableError("kernel is neither TP2 nor RR2 on the grid")

    inc = all(_row_monotone(r, True) for r in f)
    dec = all(_row_monotone(r, False) for r in f)
    monos = _pick([Monotonicity.INCREASING_IN_X, Monotonicity.DECREASING_IN_X], [inc, dec])
    if not monos:
        raise NotClassifiableError("f_n(x) is not monotone in x in a common direction across n")

    seen = set()
    for j in range(f.shape[1]):
        rep = count_sign_changes(f[:, j], zero_band)
        if rep.change_count > 1:
            raise NotClassifiableError(f"f_n(x) changes sign {rep.change_count} times in n at x={kernel.xs[j]!r}")
        if rep.change_count == 1:
            seen.add(rep.direction)
    if len(seen) > 1:
        raise NotClassifiableError("sign changes in n run in both directions across x")
    if seen == {Direction.NEG_TO_POS}:
        traverses = [SignTraverse.NEG_TO_POS_IN_N]
    elif seen == {Direction.POS_TO_NEG}:
        traverses = [SignTraverse.POS_TO_NEG_IN_N]
    else:
        traverses = [SignTraverse.NEG_TO_POS_IN_N, SignTraverse.POS_TO_NEG_IN_N]

    candidates = [(k, m, t) for k in kinds for m in monos for t in traverses]
    candidates.sort(key=lambda c: not CASE_TABLE[c].conclusive)
    k, m, t = candidates[0]
    return VDCase(k, m, t, CASE_TABLE[(k, m, t)])


def weighted_sum(kernel: BivariateGrid, f_values, weights=None) -> np.ndarray:
    """w(x) = sum_n weight_n f_n(x) K_n(x)."""
    f = np.asarray(f_values, dtype=float)
    w = np.ones(len(kernel.ns)) if weights is None else np.asarray(weights, dtype=float)
    return np.einsum("n,nx,nx->x", w, f, kernel.values)


def verify_variation_diminishing(
    kernel: BivariateGrid, f_values, weights=None, zero_band: float = ZERO_BAND
) -> VDResult:
    """Check that w(x) changes sign as the applicable proposition predicts.

    Raises :class:`InconclusiveCaseError` for Cases I-IV.
    """
    case = classify_vd_case(kernel, f_values, zero_band)
    if not case.classification.conclusive:
        raise InconclusiveCaseError(case.classification)
    report = count_sign_changes(weighted_sum(kernel, f_values, weights), zero_band)
    predicted = PREDICTION[case.classification]
    conforms = report.change_count == 0 or (report.change_count == 1 and report.direction is predicted)
    return VDResult(case, report, predicted, conforms)


def threshold_quantiles(ratio, count: int = 21) -> np.ndarray:
    """Thresholds spread over the observed range of a ratio table."""
    r = np.asarray(ratio, dtype=float)
    r = r[np.isfinite(r)]
    return np.quantile(r, np.linspace(0.0, 1.0, count))


def kernel_from_table(ns, xs, values, weights: Optional[np.ndarray] = None) -> BivariateGrid:
    values = np.asarray(values, dtype=float)
    if weights is not None:
        values = values * np.asarray(weights, dtype=float)[:, None]
    return BivariateGrid(tuple(ns), np.asarray(xs, dtype=float), values)
