"""Write the figure tables for both worked examples and print the claims."""
import argparse
import sys

from extremeorders.cli import main


def run(out_dir: str) -> int:
    worst = 0
    for example in ("example1", "example2"):
        print(f"== {example}")
        worst = max(worst, main(["reproduce", example, "--out", f"{out_dir}/{example}"]))
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    sys.exit(run(ap.parse_args().out))
