"""Job configuration for the risim CLI.

Jobs are declared in a TOML file passed with ``-c/--config``:

    [job]
    out = "ssk.csv"
    format = "csv"

    [link]
    scheme = "SSK"
    detector = "greedy"
    N = 64
    n_R = 2
    grid = "-30:1:-20"
    seed = 7

    [stop]
    min_bit_errors = 200
    max_bits = 100_000_000

Command-line flags override file values, which override the defaults
declared on the dataclasses below.
"""

from __future__ import annotations

import enum
import tomllib
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import cattrs

from ..exceptions import ParameterError
from ..montecarlo import CHUNK_USES, DEFAULT_MAX_BITS, DEFAULT_MIN_BIT_ERRORS
from ..theory import snr_grid

converter = cattrs.Converter(forbid_extra_keys=True)


class ConfigError(Exception):
    """Configuration validation error."""


class JobKind(enum.StrEnum):
    SIMULATE = "simulate"
    THEORY = "theory"
    COMPARE = "compare"
    FIGURE = "figure"


@dataclass(frozen=True)
class LinkConfig:
    """The link under study. Required fields are checked when a job is planned."""

    scheme: str | None = None
    detector: str | None = None
    N: int | None = None
    n_R: int | None = None
    constellation: str | None = None  # "PSK" or "QAM"
    M: int | None = None
    Es: float = 1.0
    kappa: float | None = None
    grid: str | None = None  # "start:step:stop" in dB
    snr_grid_db: tuple[float, ...] | None = None
    seed: int = 0


@dataclass(frozen=True)
class StopConfig:
    min_bit_errors: int = DEFAULT_MIN_BIT_ERRORS
    max_bits: int = DEFAULT_MAX_BITS
    chunk_uses: int = CHUNK_USES


@dataclass(frozen=True)
class TheoryConfig:
    mode: str = "exact"


@dataclass(frozen=True)
class CompareConfig:
    detectors: tuple[str, ...] = ("greedy", "ML")
    target_bers: tuple[float, ...] = (1e-3, 1e-4)
    theory: bool = True


@dataclass(frozen=True)
class JobConfig:
    """A complete job: what to run and where to write it."""

    kind: JobKind = JobKind.SIMULATE
    out: str | None = None
    format: str | None = None
    figure: str | None = None
    svg: str | None = None
    workers: int | None = None
    link: LinkConfig = field(default_factory=LinkConfig)
    stop: StopConfig = field(default_factory=StopConfig)
    theory: TheoryConfig = field(default_factory=TheoryConfig)
    compare: CompareConfig = field(default_factory=CompareConfig)


_SECTIONS = {"link": LinkConfig, "stop": StopConfig, "theory": TheoryConfig, "compare": CompareConfig}


def parse_grid(text: str) -> tuple[float, ...]:
    """
    Parse a ``start:step:stop`` grid in dB.

    Raises:
        ConfigError: If the text is not three numbers or the grid is empty
    """
    parts = text.split(":")
    if len(parts) != 3:
        msg = f"Invalid grid '{text}'. Expected start:step:stop in dB, e.g. -30:1:-20."
        raise ConfigError(msg)
    try:
        start, step, stop = (float(p) for p in parts)
        return snr_grid(start, step, stop)
    except (ValueError, ParameterError) as e:
        msg = f"Invalid grid '{text}': {e}"
        raise ConfigError(msg) from e


def parse_config(data: dict[str, Any], source: str = "<config>") -> JobConfig:
    """
    Structure raw TOML data into a JobConfig.

    The ``[job]`` table holds the top-level job fields; the other tables
    map onto the section dataclasses.

    Raises:
        ConfigError: On unknown keys, wrong types or invalid values
    """
    data = dict(data)
    job = data.pop("job", {})
    if not isinstance(job, dict):
        msg = f"Invalid [job] section in {source}. Expected a table."
        raise ConfigError(msg)
    try:
        return converter.structure({**job, **data}, JobConfig)
    except cattrs.BaseValidationError as e:
        details = "; ".join(cattrs.transform_error(e, path="config"))
        msg = f"Invalid configuration in {source}: {details}"
        raise ConfigError(msg) from e


def load_config(path: str | Path | None) -> JobConfig:
    """
    Load a job file, or return the defaults when ``path`` is None.

    Raises:
        ConfigError: If the file is missing, is not valid TOML or does not
            match the job schema
    """
    if path is None:
        return JobConfig()

    config_path = Path(path)
    if not config_path.exists():
        msg = f"Config file not found: {path}"
        raise ConfigError(msg)
    try:
        with config_path.open("rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        msg = f"Invalid TOML in {config_path}: {e}"
        raise ConfigError(msg) from e
    return parse_config(data, str(config_path))


def apply_overrides(cfg: JobConfig, overrides: dict[str, Any]) -> JobConfig:
    """
    Return ``cfg`` with the given settings replaced.

    Keys are field names of JobConfig or of one of its sections; values that
    are None are ignored. Setting ``grid`` discards a file's ``snr_grid_db``.
    """
    overrides = {key: value for key, value in overrides.items() if value is not None}
    top = {f.name for f in fields(JobConfig)} - set(_SECTIONS)
    changes: dict[str, Any] = {key: overrides.pop(key) for key in list(overrides) if key in top}

    for name, section_type in _SECTIONS.items():
        names = {f.name for f in fields(section_type)}
        section = {key: overrides.pop(key) for key in list(overrides) if key in names}
        if name == "link" and "grid" in section:
            section["snr_grid_db"] = None
        if section:
            changes[name] = replace(getattr(cfg, name), **section)

    if overrides:
        msg = f"Unknown settings: {', '.join(sorted(overrides))}"
        raise ConfigError(msg)
    if "kind" in changes:
        changes["kind"] = JobKind(changes["kind"])
    return replace(cfg, **changes)


def resolve_grid(link: LinkConfig) -> tuple[float, ...]:
    """
    The SNR grid of a link, from ``grid`` or ``snr_grid_db``.

    Raises:
        ConfigError: If neither is set
    """
    if link.grid is not None:
        return parse_grid(link.grid)
    if link.snr_grid_db:
        return tuple(link.snr_grid_db)
    msg = "Missing SNR grid. Set link.grid (--grid start:step:stop) or link.snr_grid_db."
    raise ConfigError(msg)
