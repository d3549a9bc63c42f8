"""JSON run configuration for the command-line front end."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional

from .baseline import make_exponential, make_weibull
from .errors import ConfigurationError, ExtremeOrdersError
from .grid import DEFAULT_POINTS, EvaluationGrid, default_grid
from .power_systems import ComponentKind, ProportionalSystem
from .random_extremes import SampleSizePMF
from . import presets

SCHEMA_VERSION = 1

TOP_KEYS = {"schema_version", "baseline", "baseline_y", "kind", "x_exponents", "y_exponents", "pmf", "grid", "options"}
OPTION_KEYS = {"theorem", "order", "direction", "n", "random_n", "seed", "samples", "mode", "negative_control"}
BASELINES = {"exponential": ({"rate"}, make_exponential), "weibull": ({"shape", "scale"}, make_weibull)}


def _baseline_from(spec):
    if not isinstance(spec, dict) or "name" not in spec:
        raise ConfigurationError("baseline must be an object with a 'name'")
    name = spec["name"]
    if name not in BASELINES:
        raise ConfigurationError(f"unknown baseline {name!r}; expected one of {sorted(BASELINES)}")
    allowed, factory = BASELINES[name]
    params = {k: v for k, v in spec.items() if k != "name"}
    unknown = set(params) - allowed
    if unknown:
        raise ConfigurationError(f"unknown {name} parameters: {sorted(unknown)}")
    try:
        return factory(**{k: float(v) for k, v in params.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc)) from exc


@dataclass(frozen=True)
class RunConfig:
    baseline: dict
    kind: ComponentKind
    x_exponents: tuple
    y_exponents: tuple
    pmf: tuple
    grid: dict = field(default_factory=lambda: {"y_points": DEFAULT_POINTS})
    baseline_y: Optional[dict] = None
    options: dict = field(default_factory=dict)

    # -- construction -------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigurationError("config must be a JSON object")
        unknown = set(data) - TOP_KEYS
        if unknown:
            raise ConfigurationError(f"unknown config fields: {sorted(unknown)}")
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ConfigurationError(f"schema_version must be {SCHEMA_VERSION}")
        missing = {"baseline", "kind", "x_exponents", "y_exponents", "pmf"} - set(data)
        if missing:
            raise ConfigurationError(f"missing config fields: {sorted(missing)}")
        options = dict(data.get("options", {}))
        bad_opts = set(options) - OPTION_KEYS
        if bad_opts:
            raise ConfigurationError(f"unknown options: {sorted(bad_opts)}")
        grid = dict(data.get("grid", {"y_points": DEFAULT_POINTS}))
        if set(grid) - {"y_points", "xs"} or len(grid) != 1:
            raise ConfigurationError("grid must have exactly one of 'y_points' or 'xs'")
        try:
            kind = ComponentKind(data["kind"])
            pmf = tuple((int(n), float(p)) for n, p in data["pmf"])
            xe = tuple(float(a) for a in data["x_exponents"])
            ye = tuple(float(a) for a in data["y_exponents"])
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"malformed config: {exc}") from exc
        cfg = cls(
            baseline=dict(data["baseline"]),
            kind=kind,
            x_exponents=xe,
            y_exponents=ye,
            pmf=pmf,
            grid=grid,
            baseline_y=dict(data["baseline_y"]) if data.get("baseline_y") is not None else None,
            options=options,
        )
        cfg.validate()
        return cfg

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "baseline": dict(self.baseline),
            "kind": self.kind.value,
            "x_exponents": list(self.x_exponents),
            "y_exponents": list(self.y_exponents),
            "pmf": [[n, p] for n, p in self.pmf],
            "grid": dict(self.grid),
            "options": dict(self.options),
        }
        if self.baseline_y is not None:
            out["baseline_y"] = dict(self.baseline_y)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def with_options(self, **updates) -> "RunConfig":
        opts = dict(self.options)
        opts.update({k: v for k, v in updates.items() if v is not None})
        return replace(self, options=opts)

    # -- derived objects ------------------------------------------------------------

    def validate(self) -> None:
        try:
            self.systems()
            pmf = self.sample_pmf()
            for sys_ in self.systems():
                pmf.check_fits(sys_)
            self.build_grid()
        except ConfigurationError:
            raise
        except (ExtremeOrdersError, ValueError, TypeError) as exc:
            raise ConfigurationError(str(exc)) from exc

    def build_baseline(self):
        return _baseline_from(self.baseline)

    def build_baseline_y(self):
        return _baseline_from(self.baseline_y) if self.baseline_y is not None else self.build_baseline()

    def systems(self):
        from .power_systems import ProportionalComponent

        def make(base, expo, label):
            return ProportionalSystem(base, tuple(ProportionalComponent(a, self.kind) for a in expo), label)

        return make(self.build_baseline(), self.x_exponents, "X"), make(self.build_baseline_y(), self.y_exponents, "Y")

    def sample_pmf(self) -> SampleSizePMF:
        return SampleSizePMF.from_pairs(self.pmf)

    def build_grid(self, points: Optional[int] = None) -> EvaluationGrid:
        if points is not None:
            return default_grid(points)
        if "xs" in self.grid:
            return EvaluationGrid.from_xs(self.grid["xs"])
        return default_grid(int(self.grid["y_points"]))


def preset(name: str) -> RunConfig:
    """Built-in configurations carrying the worked examples' parameters."""
    kinds = {"example1": ComponentKind.SURVIVAL_POWER, "example2": ComponentKind.CDF_POWER}
    if name not in kinds:
        raise ConfigurationError(f"unknown preset {name!r}; expected one of {sorted(kinds)}")
    return RunConfig(
        baseline={"name": "exponential", "rate": 1.0},
        kind=kinds[name],
        x_exponents=presets.LAMBDAS,
        y_exponents=presets.MUS,
        pmf=presets.PMF_PAIRS,
        grid={"y_points": DEFAULT_POINTS},
        options={"theorem": "T31" if name == "example1" else "T34"},
    )
