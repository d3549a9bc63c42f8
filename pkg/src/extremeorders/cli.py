"""Command-line front end.

Exit codes are fixed: 0 pass, 1 fail, 2 indeterminate or red alert,
3 I/O error, 4 invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import power_systems as ps
from . import random_extremes as rx
from . import sign_analysis as sa
from . import theorem_harness as th
from .config import RunConfig, preset
from .errors import ConfigurationError, ExtremeOrdersError, InconclusiveCaseError, NotClassifiableError
from .order_checks import (
    Order,
    OrderVerdict,
    check_hr,
    check_lr,
    check_monotone,
    check_monotone_in_n,
    check_rh,
    check_st,
    safe_ratio,
)
from .power_systems import ComponentKind

EXIT_PASS, EXIT_FAIL, EXIT_INDETERMINATE, EXIT_IO, EXIT_CONFIG = 0, 1, 2, 3, 4
MAX_WITNESSES = 10


@dataclass
class CurveTable:
    """Long-format curve data: one row per (grid point, series)."""

    figure: str
    ys: np.ndarray
    xs: np.ndarray
    series: dict

    def to_csv(self) -> str:
        lines = [f"# {self.figure}", "y,x,series,value"]
        names = list(self.series)
        for j in range(self.xs.size):
            for name in names:
                lines.append(f"{self.ys[j]:.17g},{self.xs[j]:.17g},{name},{self.series[name][j]:.17g}")
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> None:
        path.write_text(self.to_csv(), encoding="utf-8")


def _table(figure, grid, series):
    return CurveTable(figure, grid.y_values, grid.xs, {k: np.asarray(v, dtype=float) for k, v in series.items()})


def _fmt(v):
    if v.holds is None:
        return "INDETERMINATE"
    return "PASS" if v.holds else "FAIL"


def _print_witnesses(verdict, out):
    for w in verdict.witnesses[:MAX_WITNESSES]:
        out.write("    witness " + ", ".join(f"{float(c):.10g}" for c in w) + "\n")
    extra = len(verdict.witnesses) - MAX_WITNESSES
    if extra > 0:
        out.write(f"    ... {extra} more\n")


def _load(args) -> RunConfig:
    if getattr(args, "config", None) and getattr(args, "preset", None):
        raise ConfigurationError("use either --config or --preset, not both")
    if getattr(args, "config", None):
        return RunConfig.load(args.config)
    return preset(getattr(args, "preset", None) or "example1")


# --- reproduce ---------------------------------------------------------------------------


def reproduce_tables(cfg: RunConfig, grid):
    """Figure tables and the monotonicity claims attached to them."""
    X, Y = cfg.systems()
    pmf = cfg.sample_pmf()
    ns = list(pmf.support)
    xs = grid.xs
    label = {n: f"n={n}" for n in ns}
    if cfg.kind is ComponentKind.SURVIVAL_POWER:
        ratio = safe_ratio(ps.table(ps.min_cdf, X, ns, xs), ps.table(ps.min_cdf, Y, ns, xs))
        mix = safe_ratio(rx.random_min_cdf(X, pmf, grid).values, rx.random_min_cdf(Y, pmf, grid).values)
        tables = {
            "fig1.csv": _table("fig1: F_1:n(-ln y)/G_1:n(-ln y)", grid, {label[n]: ratio[k] for k, n in enumerate(ns)}),
            "fig2.csv": _table("fig2: F_1:N(-ln y)/G_1:N(-ln y)", grid, {"mixture": mix}),
        }
        claims = [
            ("fig1: F_1:n/G_1:n nondecreasing in n", check_monotone_in_n(ratio, ns, xs, increasing=True)),
            ("fig2: F_1:N/G_1:N nonincreasing in x (X_1:N <=_rh Y_1:N)", check_monotone(mix, xs, increasing=False)),
        ]
        return tables, claims
    ratio = safe_ratio(ps.table(ps.max_survival, X, ns, xs), ps.table(ps.max_survival, Y, ns, xs))
    haz = ps.table(ps.max_hazard, Y, ns, xs)
    mix = safe_ratio(rx.random_max_survival(X, pmf, grid).values, rx.random_max_survival(Y, pmf, grid).values)
    tables = {
        "fig3.csv": _table("fig3: Fbar_n:n(-ln y)/Gbar_n:n(-ln y)", grid, {label[n]: ratio[k] for k, n in enumerate(ns)}),
        "fig4.csv": _table("fig4: s_n:n(-ln y)", grid, {label[n]: haz[k] for k, n in enumerate(ns)}),
        "fig5.csv": _table("fig5: Fbar_N:N(-ln y)/Gbar_N:N(-ln y)", grid, {"mixture": mix}),
    }
    claims = [("fig3: Fbar_n:n/Gbar_n:n nondecreasing in n", check_monotone_in_n(ratio, ns, xs, increasing=True))]
    claims += [(f"fig3: Fbar_n:n/Gbar_n:n nondecreasing in x, n={n}", check_monotone(ratio[k], xs, True))
               for k, n in enumerate(ns)]
    claims += [
        ("fig4: s_n:n nonincreasing in n", check_monotone_in_n(haz, ns, xs, increasing=False)),
        ("fig5: Fbar_N:N/Gbar_N:N nondecreasing in x (X_N:N >=_hr Y_N:N)", check_monotone(mix, xs, increasing=True)),
    ]
    return tables, claims


def cmd_reproduce(args, out=sys.stdout) -> int:
    cfg = RunConfig.load(args.config) if args.config else preset(args.example or "example1")
    grid = cfg.build_grid(args.grid_points)
    tables, claims = reproduce_tables(cfg, grid)
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, tab in tables.items():
            tab.write(out_dir / name)
    except OSError as exc:
        sys.stderr.write(f"error: cannot write output: {exc}\n")
        return EXIT_IO
    for name in tables:
        out.write(f"wrote {out_dir / name}\n")
    for text, verdict in claims:
        out.write(f"{_fmt(verdict):4s}  {text}\n")
        if verdict.holds is False:
            _print_witnesses(verdict, out)
    return EXIT_PASS if all(v.holds is True for _, v in claims) else EXIT_FAIL


# --- check-order --------------------------------------------------------------------------


def _curves(system, pmf, grid, n, random_n):
    """(survival, cdf, density) of the configured extreme, fixed n or random N."""
    xs = grid.xs
    if system.kind is ComponentKind.SURVIVAL_POWER:
        surv, cdf, dens = ps.min_survival, ps.min_cdf, ps.min_density
    else:
        surv, cdf, dens = ps.max_survival, ps.max_cdf, ps.max_density
    if not random_n:
        return surv(system, n, xs), cdf(system, n, xs), dens(system, n, xs)
    pmf.check_fits(system)
    S = sum(p * surv(system, k, xs) for k, p in zip(pmf.support, pmf.probs))
    F = sum(p * cdf(system, k, xs) for k, p in zip(pmf.support, pmf.probs))
    f = sum(p * dens(system, k, xs) for k, p in zip(pmf.support, pmf.probs))
    return S, F, f


def run_check_order(cfg: RunConfig, grid, order: Order, direction: str, n: Optional[int], random_n: bool) -> OrderVerdict:
    X, Y = cfg.systems()
    pmf = cfg.sample_pmf()
    if not random_n and n is None:
        raise ConfigurationError("give --n or --random-n")
    try:
        cx = _curves(X, pmf, grid, n, random_n)
        cy = _curves(Y, pmf, grid, n, random_n)
    except IndexError as exc:
        raise ConfigurationError(str(exc)) from exc
    if direction == "ge":
        cx, cy = cy, cx
    elif direction != "le":
        raise ConfigurationError("direction must be 'le' or 'ge'")
    if order is Order.ST:
        return check_st(cx[0], cy[0], grid)
    if order is Order.HR:
        return check_hr(cx[0], cy[0], grid)
    if order is Order.RH:
        return check_rh(cx[1], cy[1], grid)
    return check_lr(cx[2], cy[2], grid)


def cmd_check_order(args, out=sys.stdout) -> int:
    cfg = _load(args)
    opts = cfg.options
    order_name = args.order or opts.get("order")
    if order_name is None:
        raise ConfigurationError("no order given")
    try:
        order = Order(order_name)
    except ValueError as exc:
        raise ConfigurationError(f"unknown order {order_name!r}") from exc
    direction = args.direction or opts.get("direction", "le")
    random_n = args.random_n or (args.n is None and bool(opts.get("random_n", False)))
    n = args.n if args.n is not None else opts.get("n")
    verdict = run_check_order(cfg, cfg.build_grid(args.grid_points), order, direction, n, random_n)
    rel = "<=" if direction == "le" else ">="
    target = "random N" if random_n else f"n={n}"
    out.write(f"{_fmt(verdict)}  X {rel}_{order.value} Y ({target}); indeterminate points: {verdict.indeterminate_count}\n")
    if verdict.holds is False:
        _print_witnesses(verdict, out)
    if verdict.holds is None:
        return EXIT_INDETERMINATE
    return EXIT_PASS if verdict.holds else EXIT_FAIL


# --- verify-theorem -------------------------------------------------------------------------


def _verdict_dict(v):
    d = {"holds": v.holds, "witness_count": len(v.witnesses), "indeterminate_count": v.indeterminate_count}
    if v.witnesses:
        d["first_witness"] = [float(c) for c in v.witnesses[0]]
    return d


def report_to_dict(report: th.TheoremReport) -> dict:
    return {
        "theorem": report.theorem_id.value,
        "overall": report.overall.value,
        "hypotheses": {name: _verdict_dict(v) for name, v in report.hypothesis_results},
        "premises": {str(n): _verdict_dict(v) for n, v in report.premise_results},
        "conclusion": _verdict_dict(report.conclusion_result),
        "diagnostics": {name: {"holds": v.holds} for name, v in report.diagnostics},
    }


def render_report(report: th.TheoremReport) -> str:
    lines = [f"theorem {report.theorem_id.value}: {report.overall.value}"]
    for name, v in report.hypothesis_results:
        lines.append(f"  hypothesis  {_fmt(v):13s} {name}")
    for n, v in report.premise_results:
        lines.append(f"  premise     {_fmt(v):13s} n={n}")
    lines.append(f"  conclusion  {_fmt(report.conclusion_result):13s} {report.conclusion_result.order.value} order on the random extremes")
    for name, v in report.diagnostics:
        lines.append(f"  diagnostic  {_fmt(v):13s} {name}")
    if report.red_alert:
        lines.append("  RED ALERT: hypotheses hold but the conclusion fails")
    return "\n".join(lines) + "\n"


def run_verify_theorem(cfg: RunConfig, grid, theorem: str) -> th.TheoremReport:
    try:
        tid = th.TheoremId(theorem)
    except ValueError as exc:
        raise ConfigurationError(f"unknown theorem {theorem!r}") from exc
    pmf = cfg.sample_pmf()
    if tid is th.TheoremId.C31:
        return th.verify_c31_iid(cfg.build_baseline(), cfg.build_baseline_y(), pmf, grid)
    X, Y = cfg.systems()
    return th.VERIFIERS[tid](X, Y, pmf, grid)


def cmd_verify_theorem(args, out=sys.stdout) -> int:
    cfg = _load(args)
    theorem = args.theorem or cfg.options.get("theorem")
    if theorem is None:
        raise ConfigurationError("no theorem given")
    report = run_verify_theorem(cfg, cfg.build_grid(args.grid_points), theorem)
    out.write(render_report(report))
    if args.report:
        try:
            Path(args.report).write_text(json.dumps(report_to_dict(report), indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"error: cannot write report: {exc}\n")
            return EXIT_IO
    return {
        th.Overall.VERIFIED: EXIT_PASS,
        th.Overall.HYPOTHESIS_FAILED: EXIT_FAIL,
        th.Overall.CONCLUSION_FAILED: EXIT_INDETERMINATE,
    }[report.overall]


# --- sign-analysis --------------------------------------------------------------------------


def cmd_sign_analysis(args, out=sys.stdout) -> int:
    cfg = _load(args)
    X, Y = cfg.systems()
    grid = cfg.build_grid(args.grid_points)
    extreme = "min" if cfg.kind is ComponentKind.SURVIVAL_POWER else "max"
    con = th.vd_construction(X, Y, cfg.sample_pmf(), grid, extreme)
    tp2, rr2 = sa.check_tp2(con.kernel), sa.check_rr2(con.kernel)
    out.write(f"kernel: TP2 {_fmt(tp2)}, RR2 {_fmt(rr2)}\n")
    failed = inconclusive = False
    for lam in sa.threshold_quantiles(con.ratio, args.thresholds):
        f = con.f_values(lam)
        observed = sa.count_sign_changes(sa.weighted_sum(con.kernel, f))
        try:
            res = sa.verify_variation_diminishing(con.kernel, f)
        except InconclusiveCaseError as exc:
            inconclusive = True
            out.write(f"threshold {lam:.10g}: {exc.case.value} (inconclusive); "
                      f"w changes sign {observed.change_count}x ({observed.direction.value})\n")
            continue
        except NotClassifiableError as exc:
            inconclusive = True
            out.write(f"threshold {lam:.10g}: not classifiable: {exc}\n")
            continue
        failed = failed or not res.conforms
        out.write(f"threshold {lam:.10g}: {res.case.classification.value}, predicted {res.predicted.value}; "
                  f"w changes sign {res.report.change_count}x ({res.report.direction.value}) "
                  f"{'conforms' if res.conforms else 'VIOLATES'}\n")
    if failed:
        return EXIT_FAIL
    return EXIT_INDETERMINATE if inconclusive else EXIT_PASS


# --- mc-validate ----------------------------------------------------------------------------

MIN_SAMPLES = 10_000


def mc_threshold(count: int) -> float:
    return 3.0 / math.sqrt(count) + 0.001


def cmd_mc_validate(args, out=sys.stdout) -> int:
    cfg = _load(args)
    opts = cfg.options
    count = int(args.samples if args.samples is not None else opts.get("samples", 1_000_000))
    seed = int(args.seed if args.seed is not None else opts.get("seed", 42))
    if count < MIN_SAMPLES:
        raise ConfigurationError(f"mc-validate needs at least {MIN_SAMPLES} samples")
    mode = args.mode or opts.get("mode") or ("min" if cfg.kind is ComponentKind.SURVIVAL_POWER else "max")
    X, _ = cfg.systems()
    pmf = cfg.sample_pmf()
    sample = rx.mc_sample_extreme(X, pmf, mode, count, seed)
    reference = X
    if args.negative_control or opts.get("negative_control"):
        reference = ps.ProportionalSystem(
            X.baseline, tuple(ps.ProportionalComponent(2.0 * c.exponent, c.kind) for c in X.components), "control"
        )
    dist = rx.ks_distance(sample, rx.analytic_cdf(reference, pmf, mode))
    limit = mc_threshold(count)
    ok = dist < limit
    out.write(f"{'PASS' if ok else 'FAIL'}  mode={mode} samples={count} seed={seed} "
              f"sup-distance={dist:.6g} threshold={limit:.6g}\n")
    return EXIT_PASS if ok else EXIT_FAIL


# --- entry point ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extremeorders", description="Stochastic orders of random minima and maxima")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON run configuration")
        sp.add_argument("--preset", choices=["example1", "example2"], help="built-in configuration")
        sp.add_argument("--grid-points", type=int, default=None, help="y-grid size (default 999)")

    r = sub.add_parser("reproduce", help="emit figure data for a worked example")
    r.add_argument("example", nargs="?", choices=["example1", "example2"])
    r.add_argument("--config")
    r.add_argument("--out", required=True)
    r.add_argument("--grid-points", type=int, default=None)
    r.set_defaults(func=cmd_reproduce)

    c = sub.add_parser("check-order", help="check one stochastic order between X and Y")
    common(c)
    c.add_argument("--order", choices=[o.value for o in Order])
    c.add_argument("--direction", choices=["le", "ge"])
    c.add_argument("--n", type=int)
    c.add_argument("--random-n", action="store_true")
    c.set_defaults(func=cmd_check_order)

    v = sub.add_parser("verify-theorem", help="check hypotheses and conclusion of a preservation theorem")
    common(v)
    v.add_argument("--theorem", choices=[t.value for t in th.TheoremId])
    v.add_argument("--report", help="also write the report as JSON")
    v.set_defaults(func=cmd_verify_theorem)

    s = sub.add_parser("sign-analysis", help="variation-diminishing analysis of the configured construction")
    common(s)
    s.add_argument("--thresholds", type=int, default=21)
    s.set_defaults(func=cmd_sign_analysis)

    m = sub.add_parser("mc-validate", help="Monte Carlo check of the analytic mixture cdf")
    common(m)
    m.add_argument("--samples", type=int)
    m.add_argument("--seed", type=int)
    m.add_argument("--mode", choices=["min", "max"])
    m.add_argument("--negative-control", action="store_true")
    m.set_defaults(func=cmd_mc_validate)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which here means "indeterminate"
        return EXIT_PASS if exc.code in (0, None) else EXIT_CONFIG
    try:
        return args.func(args, out)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG if isinstance(exc, FileNotFoundError) and getattr(args, "config", None) else EXIT_IO
    except (ConfigurationError, ExtremeOrdersError, ValueError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
