"""Hypothesis and conclusion checks for the random-extreme preservation results.

Each ``verify_*`` evaluates the fixed-n tables once, checks the "in n"
hypotheses across the pmf span (support atoms and the integers between them),
checks the per-n premise, then checks the conclusion on the pmf mixture.

The ``demonstrate_remark_*`` functions produce infeasibility certificates for
iid inputs: they show that a hypothesis set contradicts itself on the given
baselines, which is a statement about the hypotheses, not about preservation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import power_systems as ps
from .errors import ConfigurationError, DegenerateInputError, RedAlertError
from .grid import EvaluationGrid, default_grid
from .order_checks import (
    MonotoneVerdict,
    OrderVerdict,
    check_hr,
    check_lr,
    check_monotone_in_n,
    check_rh,
    check_st,
    safe_ratio,
)
from .power_systems import ComponentKind, ProportionalSystem, iid_system
from .random_extremes import SampleSizePMF
from .sign_analysis import (
    BivariateGrid,
    VDCase,
    check_rr2,
    check_tp2,
    classify_vd_case,
    kernel_from_table,
)


class TheoremId(enum.Enum):
    T31 = "T31"
    T32 = "T32"
    T33 = "T33"
    T34 = "T34"
    C31 = "C31"


class Overall(enum.Enum):
    VERIFIED = "Verified"
    HYPOTHESIS_FAILED = "HypothesisFailed"
    CONCLUSION_FAILED = "ConclusionFailed"


@dataclass(frozen=True, eq=False)
class TheoremReport:
    """Named verdicts for one theorem on one configuration.

    ``diagnostics`` are informational (for instance the kernel sign-regularity
    the proof relies on) and never affect ``overall``.
    """

    theorem_id: TheoremId
    hypothesis_results: tuple
    premise_results: tuple
    conclusion_result: OrderVerdict
    diagnostics: tuple = field(default=())

    @property
    def hypotheses_hold(self) -> bool:
        return all(v.holds is True for _, v in self.hypothesis_results) and all(
            v.holds is True for _, v in self.premise_results
        )

    @property
    def overall(self) -> Overall:
        if not self.hypotheses_hold:
            return Overall.HYPOTHESIS_FAILED
        if self.conclusion_result.holds is True:
            return Overall.VERIFIED
        return Overall.CONCLUSION_FAILED

    @property
    def red_alert(self) -> bool:
        return self.overall is Overall.CONCLUSION_FAILED

    @property
    def failed(self) -> list:
        names = [name for name, v in self.hypothesis_results if v.holds is not True]
        names += [f"premise n={n}" for n, v in self.premise_results if v.holds is not True]
        return names


def _check_pair(sysX, sysY, pmf, kind=None):
    if len(sysX) != len(sysY):
        raise ConfigurationError("X and Y systems must have the same number of components")
    if sysX.baseline.name != sysY.baseline.name:
        raise ConfigurationError("X and Y systems must share a baseline")
    if kind is not None and (sysX.kind is not kind or sysY.kind is not kind):
        raise ConfigurationError(f"this theorem needs {kind.value} systems")
    pmf.check_fits(sysX)


def _mix(tab, ns, pmf):
    rows = {n: k for k, n in enumerate(ns)}
    total = np.zeros(tab.shape[1])
    for n, p in zip(pmf.support, pmf.probs):
        total = total + p * tab[rows[n]]
    return total


def _finish(report, strict):
    if strict and report.red_alert:
        raise RedAlertError(report)
    return report


def _min_theorem(tid, FX, FY, ns, pmf, grid, ratio_increasing, strict):
    xs = grid.xs
    ratio = safe_ratio(FX, FY)
    dirn = "nondecreasing" if ratio_increasing else "nonincreasing"
    hypotheses = (
        (f"F_1:n/G_1:n {dirn} in n", check_monotone_in_n(ratio, ns, xs, increasing=ratio_increasing)),
    )
    if tid in (TheoremId.T31, TheoremId.C31):
        premises = tuple((n, check_rh(FX[k], FY[k], grid)) for k, n in enumerate(ns))
        conclusion = check_rh(_mix(FX, ns, pmf), _mix(FY, ns, pmf), grid)
    else:
        premises = tuple((n, check_rh(FY[k], FX[k], grid)) for k, n in enumerate(ns))
        conclusion = check_rh(_mix(FY, ns, pmf), _mix(FX, ns, pmf), grid)
    diagnostics = (("G_1:n RR2 in (n, x)", check_rr2(BivariateGrid(tuple(ns), xs, FY))),)
    return _finish(TheoremReport(tid, hypotheses, premises, conclusion, diagnostics), strict)


def _min_tables(sysX, sysY, ns, grid):
    return ps.table(ps.min_cdf, sysX, ns, grid.xs), ps.table(ps.min_cdf, sysY, ns, grid.xs)


def verify_t31(sysX, sysY, pmf: SampleSizePMF, grid: Optional[EvaluationGrid] = None, strict=False) -> TheoremReport:
    """F_1:n/G_1:n nondecreasing in n and X_1:n <=_rh Y_1:n  =>  X_1:N <=_rh Y_1:N."""
    grid = grid or default_grid()
    _check_pair(sysX, sysY, pmf)
    ns = list(pmf.span)
    FX, FY = _min_tables(sysX, sysY, ns, grid)
    return _min_theorem(TheoremId.T31, FX, FY, ns, pmf, grid, True, strict)


def verify_t32(sysX, sysY, pmf: SampleSizePMF, grid: Optional[EvaluationGrid] = None, strict=False) -> TheoremReport:
    """F_1:n/G_1:n nonincreasing in n and X_1:n >=_rh Y_1:n  =>  X_1:N >=_rh Y_1:N."""
    grid = grid or default_grid()
    _check_pair(sysX, sysY, pmf)
    ns = list(pmf.span)
    FX, FY = _min_tables(sysX, sysY, ns, grid)
    return _min_theorem(TheoremId.T32, FX, FY, ns, pmf, grid, False, strict)


def verify_c31_iid(baseF, baseG, pmf: SampleSizePMF, grid: Optional[EvaluationGrid] = None, strict=False) -> TheoremReport:
    """The minimum rh theorem specialised to iid components drawn from two baselines.

    The hypothesis uses the true minimum cdfs 1 - F-bar**n.  The diagnostic
    ``(F/G)^n nondecreasing in n`` records the simplified form quoted with the
    corollary, which holds exactly when F >= G pointwise.
    """
    grid = grid or default_grid()
    ns = list(pmf.span)
    sysX = iid_system(baseF, pmf.max_n, label="X iid")
    sysY = iid_system(baseG, pmf.max_n, label="Y iid")
    FX, FY = _min_tables(sysX, sysY, ns, grid)
    report = _min_theorem(TheoremId.C31, FX, FY, ns, pmf, grid, True, False)
    quoted = safe_ratio(baseF.cdf(grid.xs), baseG.cdf(grid.xs))[None, :] ** np.asarray(ns, dtype=float)[:, None]
    diag = report.diagnostics + (
        ("(F/G)^n nondecreasing in n", check_monotone_in_n(quoted, ns, grid.xs, increasing=True)),
    )
    report = TheoremReport(report.theorem_id, report.hypothesis_results, report.premise_results,
                           report.conclusion_result, diag)
    return _finish(report, strict)


def _max_theorem(tid, sysX, sysY, pmf, grid, strict):
    _check_pair(sysX, sysY, pmf, ComponentKind.CDF_POWER)
    grid = grid or default_grid()
    xs = grid.xs
    ns = list(pmf.span)
    SX = ps.table(ps.max_survival, sysX, ns, xs)
    SY = ps.table(ps.max_survival, sysY, ns, xs)
    hazY = ps.table(ps.max_hazard, sysY, ns, xs)
    ratio = safe_ratio(SX, SY)
    increasing = tid is TheoremId.T34
    dirn = "nondecreasing" if increasing else "nonincreasing"
    hypotheses = (
        ("hazard of Y_n:n nonincreasing in n", check_monotone_in_n(hazY, ns, xs, increasing=False)),
        (f"Fbar_n:n/Gbar_n:n {dirn} in n", check_monotone_in_n(ratio, ns, xs, increasing=increasing)),
    )
    if tid is TheoremId.T33:
        premises = tuple((n, check_hr(SX[k], SY[k], grid)) for k, n in enumerate(ns))
        conclusion = check_hr(_mix(SX, ns, pmf), _mix(SY, ns, pmf), grid)
    else:
        premises = tuple((n, check_hr(SY[k], SX[k], grid)) for k, n in enumerate(ns))
        conclusion = check_hr(_mix(SY, ns, pmf), _mix(SX, ns, pmf), grid)
    diagnostics = (("Gbar_n:n TP2 in (n, x)", check_tp2(BivariateGrid(tuple(ns), xs, SY))),)
    return _finish(TheoremReport(tid, hypotheses, premises, conclusion, diagnostics), strict)


def verify_t33(sysX, sysY, pmf: SampleSizePMF, grid: Optional[EvaluationGrid] = None, strict=False) -> TheoremReport:
    """Y_n:n hazard and Fbar_n:n/Gbar_n:n nonincreasing in n, X_n:n <=_hr Y_n:n  =>  X_N:N <=_hr Y_N:N."""
    return _max_theorem(TheoremId.T33, sysX, sysY, pmf, grid, strict)


def verify_t34(sysX, sysY, pmf: SampleSizePMF, grid: Optional[EvaluationGrid] = None, strict=False) -> TheoremReport:
    """Y_n:n hazard nonincreasing and Fbar_n:n/Gbar_n:n nondecreasing in n, X_n:n >=_hr Y_n:n  =>  X_N:N >=_hr Y_N:N."""
    return _max_theorem(TheoremId.T34, sysX, sysY, pmf, grid, strict)


VERIFIERS = {
    TheoremId.T31: verify_t31,
    TheoremId.T32: verify_t32,
    TheoremId.T33: verify_t33,
    TheoremId.T34: verify_t34,
}


# --- variation-diminishing constructions used in the proofs ---------------------------


@dataclass(frozen=True, eq=False)
class VDConstruction:
    """Kernel K_n(x) = p(n) * (Y-curve) and ratio X-curve / Y-curve over the pmf support."""

    kernel: BivariateGrid
    ratio: np.ndarray

    def f_values(self, threshold: float) -> np.ndarray:
        return self.ratio - threshold


def vd_construction(sysX, sysY, pmf: SampleSizePMF, grid: Optional[EvaluationGrid] = None,
                    extreme: str = "min") -> VDConstruction:
    """The (K, f) pair behind the minimum (cdf-based) or maximum (survival-based) proofs."""
    grid = grid or default_grid()
    pmf.check_fits(sysX)
    pmf.check_fits(sysY)
    ns = list(pmf.support)
    fn = ps.min_cdf if extreme == "min" else ps.max_survival
    X = ps.table(fn, sysX, ns, grid.xs)
    Y = ps.table(fn, sysY, ns, grid.xs)
    kernel = kernel_from_table(ns, grid.xs, Y, weights=np.asarray(pmf.probs))
    return VDConstruction(kernel, safe_ratio(X, Y))


# --- remarks: iid infeasibility certificates ------------------------------------------


@dataclass(frozen=True, eq=False)
class Remark31Report:
    ratio_nonincreasing: MonotoneVerdict
    ratio_nondecreasing: MonotoneVerdict
    strictly_decreasing: bool
    threshold: float
    case: VDCase

    @property
    def certified(self) -> bool:
        """The "increasing in n" hypothesis is refuted and the proof lands in Case II."""
        from .sign_analysis import Classification

        return (
            self.ratio_nonincreasing.holds is True
            and self.ratio_nondecreasing.holds is False
            and self.case.classification is Classification.CASE_II
        )


def demonstrate_remark_31(baseF, baseG, nmax: int, grid: Optional[EvaluationGrid] = None) -> Remark31Report:
    """iid X <=_hr Y forces (F-bar/G-bar)^n to be nonincreasing in n.

    So the "ratio increasing in n" hypothesis for hr preservation of minima
    cannot hold, and the (K, f) pair of that argument falls in Case II.
    """
    grid = grid or default_grid()
    xs = grid.xs
    if nmax < 2:
        raise ConfigurationError("nmax must be at least 2")
    SF, SG = baseF.survival(xs), baseG.survival(xs)
    base = check_hr(SF, SG, grid)
    if base.holds is not True:
        raise ConfigurationError("the iid demonstration needs X <=_hr Y for the two baselines")
    if np.all(np.abs(safe_ratio(SF, SG) - 1.0) <= 1e-12):
        raise DegenerateInputError("survivals coincide on the grid; no strict ordering to demonstrate")
    ns = list(range(1, nmax + 1))
    sysX = iid_system(baseF, nmax)
    sysY = iid_system(baseG, nmax)
    SXn = ps.table(ps.min_survival, sysX, ns, xs)
    SYn = ps.table(ps.min_survival, sysY, ns, xs)
    ratio = safe_ratio(SXn, SYn)
    non_inc = check_monotone_in_n(ratio, ns, xs, increasing=False)
    non_dec = check_monotone_in_n(ratio, ns, xs, increasing=True)
    interior = np.isfinite(ratio).all(axis=0) & (np.abs(ratio[0] - 1.0) > 1e-12)
    strict = bool(interior.any() and np.all(np.diff(ratio[:, interior], axis=0) < 0))
    threshold = float(np.nanmedian(ratio))
    kernel = BivariateGrid(tuple(ns), xs, SYn)
    case = classify_vd_case(kernel, ratio - threshold)
    return Remark31Report(non_inc, non_dec, strict, threshold, case)


@dataclass(frozen=True, eq=False)
class Remark32Report:
    ratio_increasing: MonotoneVerdict
    survival_dominance: OrderVerdict
    lr_premise: tuple
    boundary: bool

    @property
    def equivalence_holds(self) -> bool:
        """g_1:n/f_1:n nondecreasing in n exactly when F-bar <= G-bar."""
        return bool(self.ratio_increasing.holds) == bool(self.survival_dominance.holds)

    @property
    def contradiction(self) -> bool:
        """Strict F-bar <= G-bar together with X_1:n >=_lr Y_1:n fails for some n."""
        return (
            not self.boundary
            and self.ratio_increasing.holds is True
            and any(v.holds is not True for _, v in self.lr_premise)
        )


def demonstrate_remark_32_lr(baseF, baseG, nmax: int, grid: Optional[EvaluationGrid] = None) -> Remark32Report:
    grid = grid or default_grid()
    xs = grid.xs
    if nmax < 2:
        raise ConfigurationError("nmax must be at least 2")
    ns = list(range(1, nmax + 1))
    sysX = iid_system(baseF, nmax)
    sysY = iid_system(baseG, nmax)
    fX = ps.table(ps.min_density, sysX, ns, xs)
    fY = ps.table(ps.min_density, sysY, ns, xs)
    ratio = safe_ratio(fY, fX)
    increasing = check_monotone_in_n(ratio, ns, xs, increasing=True)
    SF, SG = baseF.survival(xs), baseG.survival(xs)
    dominance = check_st(SF, SG, grid)
    boundary = bool(np.all(np.abs(SF - SG) <= 1e-12))
    # X_1:n >=_lr Y_1:n  is  Y_1:n <=_lr X_1:n
    lr_premise = tuple((n, check_lr(fY[k], fX[k], grid)) for k, n in enumerate(ns))
    return Remark32Report(increasing, dominance, lr_premise, boundary)


# --- randomized soundness sweep --------------------------------------------------------


@dataclass
class SweepResult:
    counts: dict
    red_alerts: list

    @property
    def red_alert_count(self) -> int:
        return len(self.red_alerts)


def random_configuration(rng: np.random.Generator, baseline=None, max_components: int = 6, atoms: int = 3,
                         shared_prefix: bool = False):
    """lambda_i >= mu_i from pairs of uniforms on (0, 1) and a random ``atoms``-point pmf.

    With ``shared_prefix`` the two exponent lists agree on every component
    before the largest pmf atom.  Nested prefixes with Lambda_n > M_n make the
    fixed-n ratios of minima decrease in n in the right tail, so without this
    the "monotone in n" hypotheses essentially never hold together.
    """
    from .baseline import make_exponential

    baseline = baseline or make_exponential(1.0)
    m = int(rng.integers(atoms, max_components + 1))
    pairs = rng.uniform(0.0, 1.0, size=(m, 2))
    pairs = np.where(pairs > 0, pairs, 1e-12)
    lam, mu = pairs.max(axis=1), pairs.min(axis=1)
    support = np.sort(rng.choice(np.arange(1, m + 1), size=atoms, replace=False))
    probs = rng.dirichlet(np.ones(atoms))
    probs = probs / probs.sum()
    if shared_prefix:
        last = int(support[-1])
        mu[: last - 1] = lam[: last - 1]
    pmf = SampleSizePMF(tuple(int(n) for n in support), tuple(float(p) for p in probs))
    return baseline, lam, mu, pmf


def soundness_sweep(count: int = 200, seed: int = 20240601, grid: Optional[EvaluationGrid] = None,
                    shared_prefix: bool = False) -> SweepResult:
    """Run T31-T34 on random proportional configurations in both role assignments."""
    grid = grid or default_grid()
    rng = np.random.default_rng(seed)
    counts = {tid: {o: 0 for o in Overall} for tid in VERIFIERS}
    red = []
    for i in range(count):
        baseline, lam, mu, pmf = random_configuration(rng, shared_prefix=shared_prefix)
        for tid, verify in VERIFIERS.items():
            make = ps.survival_power_system if tid in (TheoremId.T31, TheoremId.T32) else ps.cdf_power_system
            for a, b in ((lam, mu), (mu, lam)):
                rep = verify(make(baseline, a, "X"), make(baseline, b, "Y"), pmf, grid)
                counts[tid][rep.overall] += 1
                if rep.red_alert:
                    red.append((i, tid, tuple(a), tuple(b), pmf))
    return SweepResult(counts, red)


def search_c31_iid_pairs(grid: Optional[EvaluationGrid] = None, pmf: Optional[SampleSizePMF] = None):
    """Scan exponential/Weibull baseline pairs for non-identical iid pairs verifying the corollary.

    Returns the list of (F name, G name, report) that verified.
    """
    from .baseline import make_exponential, make_weibull

    grid = grid or default_grid()
    pmf = pmf or SampleSizePMF((3, 4, 5), (0.2, 0.4, 0.4))
    models = [make_exponential(r) for r in (0.5, 1.0, 2.0, 3.0)]
    models += [make_weibull(k, s) for k in (0.5, 1.5, 2.0, 3.0) for s in (0.5, 1.0, 2.0)]
    found = []
    for F in models:
        for G in models:
            if F.name == G.name:
                continue
            rep = verify_c31_iid(F, G, pmf, grid)
            if rep.overall is Overall.VERIFIED:
                found.append((F.name, G.name, rep))
    return found
