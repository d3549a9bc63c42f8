"""Parameters of the two worked examples (exponential baseline, five components)."""
from __future__ import annotations

from .baseline import make_exponential
from .power_systems import cdf_power_system, survival_power_system
from .random_extremes import SampleSizePMF

LAMBDAS = (0.1, 0.2, 0.25, 0.35, 0.5)
MUS = (0.05, 0.15, 0.23, 0.33, 0.5)
PMF_PAIRS = ((3, 0.2), (4, 0.4), (5, 0.4))


def example_pmf() -> SampleSizePMF:
    return SampleSizePMF.from_pairs(PMF_PAIRS)


def example1():
    """Survival-power systems (minima); returns (X system, Y system, pmf)."""
    base = make_exponential(1.0)
    return (survival_power_system(base, LAMBDAS, "X"), survival_power_system(base, MUS, "Y"), example_pmf())


def example2():
    """Cdf-power systems (maxima); returns (X system, Y system, pmf)."""
    base = make_exponential(1.0)
    return (cdf_power_system(base, LAMBDAS, "X"), cdf_power_system(base, MUS, "Y"), example_pmf())
