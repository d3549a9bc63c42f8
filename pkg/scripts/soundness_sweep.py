"""Randomised soundness sweep of the four preservation theorems."""
import argparse
import time

from extremeorders.grid import default_grid
from extremeorders.theorem_harness import Overall, soundness_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--grid-points", type=int, default=999)
    ap.add_argument("--shared-prefix", action="store_true",
                    help="equal exponents before the largest pmf atom")
    args = ap.parse_args()
    start = time.perf_counter()
    res = soundness_sweep(args.count, args.seed, default_grid(args.grid_points), args.shared_prefix)
    print(f"{'theorem':8s} {'Verified':>9s} {'HypFailed':>10s} {'ConclFailed':>12s}")
    for tid, counts in res.counts.items():
        print(f"{tid.value:8s} {counts[Overall.VERIFIED]:9d} {counts[Overall.HYPOTHESIS_FAILED]:10d} "
              f"{counts[Overall.CONCLUSION_FAILED]:12d}")
    print(f"red alerts: {res.red_alert_count}  ({time.perf_counter() - start:.1f}s)")
    for alert in res.red_alerts:
        print("  ", alert)
    return 1 if res.red_alert_count else 0


if __name__ == "__main__":
    raise SystemExit(main())
