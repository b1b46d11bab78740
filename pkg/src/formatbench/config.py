"""Workload configuration: YAML schema, defaults, naming, validation.

A workload file needs only ``dataset_count`` and ``dims``; everything else
has a default.  An empty ``formats`` list (or none at all) selects every
registered adapter at run time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import yaml

DEFAULT_TRIALS = 10
DEFAULT_SEED = 42
DEFAULT_OUTPUT_DIR = "."

SINK_DISCARD = "discard"
SINK_STDOUT = "standard_output"
READ_SINKS = (SINK_DISCARD, SINK_STDOUT)

_SCHEMA_KEYS = (
    "test_name",
    "dataset_count",
    "dims",
    "trials",
    "formats",
    "seed",
    "output_dir",
    "keep_files",
    "read_sink",
)
_REQUIRED_KEYS = ("dataset_count", "dims")
_MAX_SEED = 2**64 - 1


class ConfigError(ValueError):
    """Unparseable or invalid workload configuration."""


def auto_test_name(dataset_count: int, dims: Sequence[int]) -> str:
    """Name a workload from its dataset count and array rank.

    Rank 1 is a vector, rank 2 a matrix, anything higher a tensor.  An
    explicit ``test_name`` in the config file overrides this rule.
    """
    rank = len(dims)
    if rank == 1:
        kind = "Vector"
    elif rank == 2:
        kind = "Matrix"
    else:
        kind = "Tensor"
    return f"{dataset_count}-{kind}"


@dataclass(frozen=True)
class WorkloadConfig:
    """Parameters of one benchmark run."""

    dataset_count: int
    dims: tuple[int, ...]
    test_name: str = ""
    trials: int = DEFAULT_TRIALS
    formats: tuple[str, ...] = ()  # () selects every registered adapter
    seed: int = DEFAULT_SEED
    output_dir: str = DEFAULT_OUTPUT_DIR
    keep_files: bool = False
    read_sink: str = SINK_DISCARD

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "formats", tuple(self.formats))
        if not self.test_name:
            object.__setattr__(self, "test_name", auto_test_name(self.dataset_count, self.dims))


def validate(config: WorkloadConfig, registry_names: Iterable[str] | None = None) -> list[str]:
    """Every invariant violation in ``config``, not just the first.

    ``registry_names`` is the set of known adapter names; pass None to skip
    the format check.  An empty list means the config is valid.
    """
    errors = []
    if not isinstance(config.dataset_count, int) or isinstance(config.dataset_count, bool):
        errors.append("dataset_count must be an integer")
    elif config.dataset_count < 1:
        errors.append(f"dataset_count must be >= 1 (got {config.dataset_count})")
    if not config.dims:
        errors.append("dims must be a non-empty list")
    else:
        for i, d in enumerate(config.dims):
            if not isinstance(d, int) or isinstance(d, bool):
                errors.append(f"dims[{i}] must be an integer")
            elif d < 1:
                errors.append(f"dims[{i}] must be >= 1 (got {d})")
    if not isinstance(config.trials, int) or isinstance(config.trials, bool):
        errors.append("trials must be an integer")
    elif config.trials < 1:
        errors.append(f"trials must be >= 1 (got {config.trials})")
    if not isinstance(config.seed, int) or isinstance(config.seed, bool):
        errors.append("seed must be an integer")
    elif not 0 <= config.seed <= _MAX_SEED:
        errors.append(f"seed must fit in 64 unsigned bits (got {config.seed})")
    if not config.test_name:
        errors.append("test_name must be non-empty")
    if config.read_sink not in READ_SINKS:
        errors.append(f"read_sink must be one of {READ_SINKS} (got {config.read_sink!r})")
    for i, name in enumerate(config.formats):
        if not isinstance(name, str) or not name:
            errors.append(f"formats[{i}] must be a non-empty string")
    if registry_names is not None:
        known = set(registry_names)
        for name in config.formats:
            if isinstance(name, str) and name and name not in known:
                errors.append(f"unknown format {name!r}; registered: {', '.join(sorted(known)) or 'none'}")
    return errors


def parse_config(document: str, *, default_output_dir: str = DEFAULT_OUTPUT_DIR) -> WorkloadConfig:
    """Parse a YAML workload document into a fully defaulted WorkloadConfig."""
    try:
        raw = yaml.safe_load(document)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark is not None else ""
        raise ConfigError(f"malformed YAML{where}: {getattr(exc, 'problem', exc)}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a YAML mapping")

    unknown = sorted(set(raw) - set(_SCHEMA_KEYS))
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    missing = [k for k in _REQUIRED_KEYS if k not in raw]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    dims = raw["dims"]
    if not isinstance(dims, list):
        raise ConfigError("dims must be a list of integers")
    formats = raw.get("formats", [])
    if not isinstance(formats, list):
        raise ConfigError("formats must be a list of adapter names")
    test_name = raw.get("test_name", "")
    if test_name is not None and not isinstance(test_name, str):
        raise ConfigError("test_name must be a string")
    keep_files = raw.get("keep_files", False)
    if not isinstance(keep_files, bool):
        raise ConfigError("keep_files must be a boolean")
    output_dir = raw.get("output_dir", default_output_dir)
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("output_dir must be a non-empty string")
    read_sink = raw.get("read_sink", SINK_DISCARD)
    if read_sink == "stdout":  # CLI spelling accepted as an alias
        read_sink = SINK_STDOUT

    config = WorkloadConfig(
        dataset_count=raw["dataset_count"],
        dims=tuple(dims),
        test_name=test_name or "",
        trials=raw.get("trials", DEFAULT_TRIALS),
        formats=tuple(formats),
        seed=raw.get("seed", DEFAULT_SEED),
        output_dir=output_dir,
        keep_files=keep_files,
        read_sink=read_sink,
    )
    problems = validate(config)
    if problems:
        raise ConfigError("; ".join(problems))
    return config


def serialize_config(config: WorkloadConfig) -> str:
    """Render a config back to YAML with every key explicit.

    Inverse of parse_config: parsing the output reproduces the config.
    """
    doc = {
        "test_name": config.test_name,
        "dataset_count": config.dataset_count,
        "dims": list(config.dims),
        "trials": config.trials,
        "formats": list(config.formats),
        "seed": config.seed,
        "output_dir": config.output_dir,
        "keep_files": config.keep_files,
        "read_sink": config.read_sink,
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False)
