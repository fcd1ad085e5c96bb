"""Flat ``key = value`` experiment configs with unit-suffixed keys.

Unknown keys are rejected outright: a typo must fail a run, not silently
corrupt a sweep.  ``#`` starts a comment, blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .channels import ScenarioGeometry, dbm_to_linear
from .errors import ConfigurationError
from .optimizer import TRUSTED_SCHEMES, UNTRUSTED_SCHEMES, GridConfig, SchemeId

SWEEP_PARAMETERS = ("relay_count", "relay_distance", "eav_distance")

_KNOWN_KEYS = (
    "scenario",
    "l1_m",
    "l2_m",
    "le_m",
    "lr_m",
    "relay_count",
    "gamma",
    "p_dbm",
    "trials",
    "seed",
    "schemes",
    "mu_points",
    "grid_points",
    "refine_passes",
    "grid_margin",
    "sweep_parameter",
    "sweep_values",
    "output_path",
)


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    l1_m: float
    l2_m: float
    lr_m: float
    gamma: float
    p_dbm: float
    trials: int
    seed: int
    schemes: tuple[SchemeId, ...]
    le_m: float | None = None
    relay_count: int = 1
    mu_points: int = 41
    grid_points: int = 33
    refine_passes: int = 2
    grid_margin: float = 1e-3
    sweep: SweepSpec | None = None
    output_path: str | None = None

    def geometry(
        self,
        relay_count: int | None = None,
        relay_distance: float | None = None,
        eav_distance: float | None = None,
    ) -> ScenarioGeometry:
        return ScenarioGeometry(
            l1=self.l1_m,
            l2=self.l2_m,
            lr=self.lr_m if relay_distance is None else relay_distance,
            gamma=self.gamma,
            K=self.relay_count if relay_count is None else relay_count,
            le=self.le_m if eav_distance is None else eav_distance,
        )

    def grid_config(self) -> GridConfig:
        return GridConfig(
            points=self.grid_points,
            refine_passes=self.refine_passes,
            margin=self.grid_margin,
        )

    def total_power(self) -> float:
        return dbm_to_linear(self.p_dbm)


def _typed(entries: dict, key: str, kind, required: bool, default=None):
    if key not in entries:
        if required:
            raise ConfigurationError(f"missing required config key '{key}'")
        return default
    raw = entries[key]
    try:
        return kind(raw)
    except ValueError as exc:
        raise ConfigurationError(f"config key '{key}': cannot parse '{raw}'") from exc


def _parse_schemes(raw: str) -> tuple[SchemeId, ...]:
    names = [token.strip().lower() for token in raw.split(",") if token.strip()]
    if not names:
        raise ConfigurationError("schemes must list at least one scheme")
    out = []
    for name in names:
        try:
            scheme = SchemeId(name)
        except ValueError as exc:
            valid = ", ".join(s.value for s in SchemeId)
            raise ConfigurationError(f"unknown scheme '{name}' (valid: {valid})") from exc
        if scheme in out:
            raise ConfigurationError(f"scheme '{name}' listed twice")
        out.append(scheme)
    return tuple(out)


def parse_config(path) -> ExperimentConfig:
    """Parse and cross-validate an experiment config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc

    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key '{key}'")
        if key in entries:
            raise ConfigurationError(f"{path}:{lineno}: duplicate key '{key}'")
        if not value:
            raise ConfigurationError(f"{path}:{lineno}: key '{key}' has no value")
        entries[key] = value

    scenario = _typed(entries, "scenario", str, required=True).lower()
    if scenario not in ("trusted", "untrusted"):
        raise ConfigurationError(f"scenario must be 'trusted' or 'untrusted', got '{scenario}'")

    schemes = _parse_schemes(_typed(entries, "schemes", str, required=True))
    allowed = TRUSTED_SCHEMES if scenario == "trusted" else UNTRUSTED_SCHEMES
    for scheme in schemes:
        if scheme not in allowed:
            raise ConfigurationError(
                f"scheme '{scheme.value}' is not valid for the {scenario} scenario"
            )

    if scenario == "trusted":
        le_m = _typed(entries, "le_m", float, required=True)
        relay_count = _typed(entries, "relay_count", int, required=True)
    else:
        if "le_m" in entries:
            raise ConfigurationError("le_m only applies to the trusted scenario")
        le_m = None
        relay_count = _typed(entries, "relay_count", int, required=False, default=1)
        if relay_count != 1:
            raise ConfigurationError("the untrusted scenario has exactly one relay")

    sweep = None
    if ("sweep_parameter" in entries) != ("sweep_values" in entries):
        raise ConfigurationError("sweep_parameter and sweep_values must be given together")
    if "sweep_parameter" in entries:
        parameter = entries["sweep_parameter"].strip().lower()
        if parameter not in SWEEP_PARAMETERS:
            raise ConfigurationError(
                f"sweep_parameter must be one of {SWEEP_PARAMETERS}, got '{parameter}'"
            )
        if parameter in ("relay_count", "eav_distance") and scenario != "trusted":
            raise ConfigurationError(f"sweep over {parameter} needs the trusted scenario")
        kind = int if parameter == "relay_count" else float
        try:
            values = tuple(kind(tok.strip()) for tok in entries["sweep_values"].split(",") if tok.strip())
        except ValueError as exc:
            raise ConfigurationError(f"sweep_values: cannot parse '{entries['sweep_values']}'") from exc
        if not values:
            raise ConfigurationError("sweep_values must list at least one value")
        if any(v <= 0 for v in values):
            raise ConfigurationError("sweep values must be positive")
        sweep = SweepSpec(parameter=parameter, values=values)

    cfg = ExperimentConfig(
        scenario=scenario,
        l1_m=_typed(entries, "l1_m", float, required=True),
        l2_m=_typed(entries, "l2_m", float, required=True),
        lr_m=_typed(entries, "lr_m", float, required=True),
        gamma=_typed(entries, "gamma", float, required=True),
        p_dbm=_typed(entries, "p_dbm", float, required=True),
        trials=_typed(entries, "trials", int, required=False, default=1000),
        seed=_typed(entries, "seed", int, required=True),
        schemes=schemes,
        le_m=le_m,
        relay_count=relay_count,
        mu_points=_typed(entries, "mu_points", int, required=False, default=41),
        grid_points=_typed(entries, "grid_points", int, required=False, default=33),
        refine_passes=_typed(entries, "refine_passes", int, required=False, default=2),
        grid_margin=_typed(entries, "grid_margin", float, required=False, default=1e-3),
        sweep=sweep,
        output_path=entries.get("output_path"),
    )

    if cfg.trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {cfg.trials}")
    if cfg.mu_points < 2:
        raise ConfigurationError(f"mu_points must be >= 2, got {cfg.mu_points}")
    needs_relays = set(schemes) - {SchemeId.DIRECT, SchemeId.BASELINE_UNTRUSTED}
    if scenario == "trusted" and needs_relays and cfg.relay_count < 3:
        raise ConfigurationError("trusted relaying schemes need relay_count >= 3")
    try:
        cfg.geometry()
        cfg.grid_config()
    except Exception as exc:
        raise ConfigurationError(f"invalid configuration: {exc}") from exc
    if cfg.sweep is not None:
        for value in cfg.sweep.values:
            try:
                cfg.geometry(**{cfg.sweep.parameter: value})
            except Exception as exc:
                raise ConfigurationError(
                    f"sweep value {value} gives an invalid geometry: {exc}"
                ) from exc
    return cfg


def override(cfg: ExperimentConfig, **kwargs) -> ExperimentConfig:
    """Apply command-line overrides (seed, trials, output_path)."""
    updates = {k: v for k, v in kwargs.items() if v is not None}
    return replace(cfg, **updates) if updates else cfg
