"""Stochastic comparison of random minima and maxima of independent components."""
from .baseline import BaselineModel, hazard_pair, lemma_ratio, make_exponential, make_weibull
from .grid import EvaluationGrid, default_grid
from .power_systems import ComponentKind, ProportionalSystem, cdf_power_system, survival_power_system
from .random_extremes import SampleSizePMF

__all__ = [
    "BaselineModel",
    "ComponentKind",
    "EvaluationGrid",
    "ProportionalSystem",
    "SampleSizePMF",
    "cdf_power_system",
    "default_grid",
    "hazard_pair",
    "lemma_ratio",
    "make_exponential",
    "make_weibull",
    "survival_power_system",
]
