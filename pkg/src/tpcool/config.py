"""Run configuration: defaults, INI parsing, validation, parameter paths.

The config file is INI-style key/value text with nested dotted sections::

    [run]
    me_variant = filtered
    n_max = 30
    observables = mean_n, g2_zero, p0, p1

    [model]
    omega_a = 1.0
    omega_b = 0.05
    g = 0.01

    [bath.hot]
    kappa = 0.02
    temperature = 2.0
    filter_center = 0.9
    filter_width = 0.01

    [bath.cold]
    kappa = 0.02
    temperature = 0.0
    filter_center = 1.0
    filter_width = 0.01

    [bath.resonator]
    kappa = 1e-7
    nbar = 5.0

    [sweep]
    parameter = bath.hot.temperature
    grid = logspace:0.05:2.0:40

A bare filename passed as --config is also looked up in the directory
named by the TPCOOL_CONFIG_DIR environment variable.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .liouvillian import MEVariant
from .model import (
    BathLabel,
    BathSpec,
    FilterSpec,
    LambShiftMode,
    ModelParams,
    Variant,
    bose_occupation,
    resonator_temperature_for_nbar,
)

ENV_CONFIG_DIR = "TPCOOL_CONFIG_DIR"

KNOWN_OBSERVABLES = ("mean_n", "g2_zero", "p0", "p1", "p2", "p3", "psum01")


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending field."""


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ConfigError("sweep.grid: empty value grid")
        if any(not math.isfinite(v) for v in self.values):
            raise ConfigError("sweep.grid: grid values must be finite")


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    baths: tuple[BathSpec, BathSpec, BathSpec]
    n_max: int
    me_variant: MEVariant
    observables: tuple[str, ...]
    sweep: SweepSpec | None = None
    output_path: str | None = None
    sigma_z_interpretation: str = "literal"

    def bath(self, label: BathLabel) -> BathSpec:
        for b in self.baths:
            if b.label is label:
                return b
        raise ConfigError(f"missing {label.value!r} bath")

    @property
    def nbar_b(self) -> float:
        res = self.bath(BathLabel.RESONATOR)
        if res.temperature == 0.0:
            return 0.0
        return bose_occupation(self.model.omega_b, res.temperature)


def default_config() -> RunConfig:
    """Shipped defaults: the circuit-QED operating point in scaled units.

    omega_a = 1, omega_b = 0.05, g = 0.01, kappa_h = kappa_c = 0.02,
    kappa_b = 1e-7 (2*pi x 1 kHz against a 2*pi x 10 GHz TLS), hot bath
    filtered at the two-photon sideband, cold bath at the TLS frequency,
    resonator bath holding nbar = 5.
    """
    model = ModelParams(omega_a=1.0, omega_b=0.05, g=0.01, variant=Variant.TLS_RESONATOR)
    hot = BathSpec(
        label=BathLabel.HOT,
        kappa=0.02,
        temperature=2.0,
        filter=FilterSpec(center=model.omega_minus, width=0.01),
    )
    cold = BathSpec(
        label=BathLabel.COLD,
        kappa=0.02,
        temperature=0.0,
        filter=FilterSpec(center=model.omega_a, width=0.01),
    )
    resonator = BathSpec(
        label=BathLabel.RESONATOR,
        kappa=1e-7,
        temperature=resonator_temperature_for_nbar(5.0, model.omega_b),
    )
    return RunConfig(
        model=model,
        baths=(hot, cold, resonator),
        n_max=30,
        me_variant=MEVariant.FILTERED,
        observables=("mean_n", "g2_zero", "p0", "p1"),
    )


def si_parameter_table(config: RunConfig, omega_a_hz: float = 10e9) -> dict[str, float]:
    """Translate the scaled parameters to SI frequencies (Hz, not angular)."""
    model = config.model
    out = {
        "omega_a_Hz": omega_a_hz,
        "omega_b_Hz": model.omega_b * omega_a_hz,
        "g_Hz": model.g * omega_a_hz,
    }
    for bath in config.baths:
        out[f"kappa_{bath.label.value}_Hz"] = bath.kappa * omega_a_hz
    return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_grid(text: str) -> tuple[float, ...]:
    text = text.strip()
    for name, fn in (("logspace", np.geomspace), ("linspace", np.linspace)):
        if text.startswith(name + ":"):
            try:
                lo, hi, n = text[len(name) + 1:].split(":")
                return tuple(float(v) for v in fn(float(lo), float(hi), int(n)))
            except Exception as exc:
                raise ConfigError(f"sweep.grid: cannot parse {text!r}") from exc
    try:
        return tuple(float(v) for v in text.split(","))
    except Exception as exc:
        raise ConfigError(f"sweep.grid: cannot parse {text!r}") from exc


def _bath_from_section(label: BathLabel, section) -> BathSpec:
    kappa = section.getfloat("kappa", fallback=0.0)
    if "nbar" in section and "temperature" in section:
        raise ConfigError(f"bath.{label.value}: give either nbar or temperature, not both")
    if "nbar" in section:
        omega_b = section.getfloat("_omega_b")
        temperature = resonator_temperature_for_nbar(section.getfloat("nbar"), omega_b)
    else:
        temperature = section.getfloat("temperature", fallback=0.0)
    filt = None
    if "filter_center" in section:
        filt = FilterSpec(
            center=section.getfloat("filter_center"),
            width=section.getfloat("filter_width", fallback=0.01),
            lamb_shift=LambShiftMode(section.get("lamb_shift", fallback="zero")),
        )
    return BathSpec(label=label, kappa=kappa, temperature=temperature, filter=filt)


def resolve_config_path(path: str | os.PathLike) -> Path:
    p = Path(path)
    if p.exists():
        return p
    env_dir = os.environ.get(ENV_CONFIG_DIR)
    if env_dir and not p.is_absolute():
        candidate = Path(env_dir) / p
        if candidate.exists():
            return candidate
    raise ConfigError(f"config file not found: {path}")


def load_config(path: str | os.PathLike) -> RunConfig:
    """Parse and validate a config file, overlaying the shipped defaults."""
    parser = configparser.ConfigParser()
    with open(resolve_config_path(path)) as fh:
        parser.read_file(fh)

    base = default_config()
    model_sec = parser["model"] if parser.has_section("model") else {}
    model = ModelParams(
        omega_a=float(model_sec.get("omega_a", base.model.omega_a)),
        omega_b=float(model_sec.get("omega_b", base.model.omega_b)),
        g=float(model_sec.get("g", base.model.g)),
        variant=Variant(model_sec.get("variant", base.model.variant.value)),
    )

    baths = []
    bath_sections = [s for s in parser.sections() if s.startswith("bath.")]
    labels_seen = []
    for name in bath_sections:
        tag = name.split(".", 1)[1]
        try:
            label = BathLabel(tag)
        except ValueError as exc:
            raise ConfigError(f"{name}: unknown bath label {tag!r}") from exc
        labels_seen.append(label)
        parser[name]["_omega_b"] = str(model.omega_b)  # for nbar -> temperature
        baths.append(_bath_from_section(label, parser[name]))
    if len(set(labels_seen)) != len(labels_seen):
        dupes = sorted({l.value for l in labels_seen if labels_seen.count(l) > 1})
        raise ConfigError(f"duplicate bath section(s): {', '.join(dupes)}")
    by_label = {b.label: b for b in baths}
    merged = tuple(
        by_label.get(b.label, b) for b in base.baths
    )

    run_sec = parser["run"] if parser.has_section("run") else {}
    observables = base.observables
    if "observables" in run_sec:
        observables = tuple(s.strip() for s in run_sec["observables"].split(",") if s.strip())

    sweep = None
    if parser.has_section("sweep"):
        sec = parser["sweep"]
        if "parameter" not in sec or "grid" not in sec:
            raise ConfigError("sweep: both parameter and grid are required")
        sweep = SweepSpec(parameter=sec["parameter"].strip(), values=_parse_grid(sec["grid"]))

    config = RunConfig(
        model=model,
        baths=merged,
        n_max=int(run_sec.get("n_max", base.n_max)),
        me_variant=MEVariant(run_sec.get("me_variant", base.me_variant.value)),
        observables=observables,
        sweep=sweep,
        output_path=run_sec.get("out", None),
        sigma_z_interpretation=run_sec.get("sigma_z_interpretation", "literal"),
    )
    validate_config(config)
    return config


def validate_config(config: RunConfig) -> None:
    """Raise ConfigError naming the first offending field."""
    labels = [b.label for b in config.baths]
    for lab in (BathLabel.HOT, BathLabel.COLD, BathLabel.RESONATOR):
        count = labels.count(lab)
        if count != 1:
            raise ConfigError(f"baths: need exactly one {lab.value!r} bath, found {count}")
    if config.n_max < 4:
        raise ConfigError(f"run.n_max: must be >= 4, got {config.n_max}")
    for obs in config.observables:
        if obs not in KNOWN_OBSERVABLES:
            raise ConfigError(
                f"run.observables: unknown observable {obs!r} "
                f"(known: {', '.join(KNOWN_OBSERVABLES)})"
            )
    if config.sigma_z_interpretation not in ("literal", "population"):
        raise ConfigError(
            f"run.sigma_z_interpretation: {config.sigma_z_interpretation!r} "
            "is not 'literal' or 'population'"
        )
    if config.sweep is not None:
        apply_parameter(config, config.sweep.parameter, config.sweep.values[0])


# ---------------------------------------------------------------------------
# parameter paths (sweeps)
# ---------------------------------------------------------------------------

def apply_parameter(config: RunConfig, path: str, value: float) -> RunConfig:
    """Return a copy of the config with one dotted parameter replaced.

    Supported paths: model.{omega_a,omega_b,g}, bath.<label>.{kappa,
    temperature,nbar}, n_max.
    """
    parts = path.split(".")
    if parts == ["n_max"]:
        return dataclasses.replace(config, n_max=int(value))
    if len(parts) == 2 and parts[0] == "model":
        if parts[1] not in ("omega_a", "omega_b", "g"):
            raise ConfigError(f"sweep.parameter: unknown model field {parts[1]!r}")
        model = dataclasses.replace(config.model, **{parts[1]: float(value)})
        return dataclasses.replace(config, model=model)
    if len(parts) == 3 and parts[0] == "bath":
        try:
            label = BathLabel(parts[1])
        except ValueError as exc:
            raise ConfigError(f"sweep.parameter: unknown bath {parts[1]!r}") from exc
        bath = config.bath(label)
        if parts[2] == "nbar":
            bath = dataclasses.replace(
                bath,
                temperature=resonator_temperature_for_nbar(float(value), config.model.omega_b),
            )
        elif parts[2] in ("kappa", "temperature"):
            bath = dataclasses.replace(bath, **{parts[2]: float(value)})
        else:
            raise ConfigError(f"sweep.parameter: unknown bath field {parts[2]!r}")
        baths = tuple(bath if b.label is label else b for b in config.baths)
        return dataclasses.replace(config, baths=baths)
    raise ConfigError(f"sweep.parameter: cannot resolve path {path!r}")


def config_as_dict(config: RunConfig) -> dict:
    """Flat, JSON-friendly view of every resolved parameter."""
    out = {
        "model.omega_a": config.model.omega_a,
        "model.omega_b": config.model.omega_b,
        "model.g": config.model.g,
        "model.eta": config.model.eta,
        "model.omega_minus": config.model.omega_minus,
        "model.variant": config.model.variant.value,
        "run.n_max": config.n_max,
        "run.me_variant": config.me_variant.value,
        "run.observables": list(config.observables),
        "run.sigma_z_interpretation": config.sigma_z_interpretation,
        "resonator.nbar": config.nbar_b,
    }
    for bath in config.baths:
        prefix = f"bath.{bath.label.value}"
        out[f"{prefix}.kappa"] = bath.kappa
        out[f"{prefix}.temperature"] = bath.temperature
        if bath.filter is not None:
            out[f"{prefix}.filter_center"] = bath.filter.center
            out[f"{prefix}.filter_width"] = bath.filter.width
            out[f"{prefix}.lamb_shift"] = bath.filter.lamb_shift.value
    if config.sweep is not None:
        out["sweep.parameter"] = config.sweep.parameter
        out["sweep.values"] = list(config.sweep.values)
    return out
