"""Two-phase benchmark loop: timed writes, cache-defeat relocation, timed reads.

Per trial and format the engine writes a store under ``Files/``, copies it to
``Files Read/`` under a renamed basename so the page cache for the original
path cannot mask read costs, then reads everything back.  Only the four
dataset-level operations are timed; payload generation, verification, and
relocation happen outside the timed regions.  All timings come from the
monotonic integer-nanosecond clock.
"""

from __future__ import annotations

import hashlib
import logging
import shutil
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import datagen
from .adapters.base import AdapterRegistry, FormatAdapter, dataset_name
from .config import SINK_STDOUT, WorkloadConfig

log = logging.getLogger(__name__)

FILES_DIRNAME = "Files"
FILES_READ_DIRNAME = "Files Read"
READ_BASENAME_SUFFIX = "_read"

_NS_PER_S = 1_000_000_000


class RunError(RuntimeError):
    """The run as a whole could not produce results."""


def _avg_seconds(total_ns: int, count: int) -> float:
    # single correctly-rounded division keeps power-of-two cases exact
    return total_ns / (count * _NS_PER_S)


def _record_seconds(total_ns: int, count: int) -> float:
    # quantized to whole nanoseconds so the value survives the CSV's
    # 9-fractional-digit rendering losslessly
    return round(Fraction(total_ns, count)) / 1e9


@dataclass(frozen=True)
class WritePhaseTiming:
    """Accumulated write-phase totals in integer nanoseconds."""

    dataset_count: int
    create_total_ns: int
    write_total_ns: int
    close_ns: int

    @property
    def create_avg_s(self) -> float:
        return _avg_seconds(self.create_total_ns, self.dataset_count)

    @property
    def write_avg_s(self) -> float:
        return _avg_seconds(self.write_total_ns, self.dataset_count)


@dataclass(frozen=True)
class ReadPhaseTiming:
    """Accumulated read-phase totals plus the verification outcome."""

    dataset_count: int
    open_total_ns: int
    read_total_ns: int
    close_ns: int
    verified: bool
    first_mismatch: str | None = None
    payload_digest: str = ""

    @property
    def open_avg_s(self) -> float:
        return _avg_seconds(self.open_total_ns, self.dataset_count)

    @property
    def read_avg_s(self) -> float:
        return _avg_seconds(self.read_total_ns, self.dataset_count)


@dataclass(frozen=True)
class TrialRecord:
    """One (trial, format) measurement as persisted to CSV."""

    test_name: str
    trial_index: int
    format_name: str
    dataset_count: int
    dims: tuple[int, ...]
    create_avg_s: float
    write_avg_s: float
    open_avg_s: float
    read_avg_s: float
    verified: bool
    read_digest: str = field(default="", compare=False)  # not part of the CSV schema


def _safe_stem(test_name: str) -> str:
    return test_name.replace("/", "-").replace("\\", "-")


def _written_path(adapter: FormatAdapter, config: WorkloadConfig, trial_index: int) -> Path:
    stem = f"{_safe_stem(config.test_name)}_t{trial_index}"
    return Path(config.output_dir) / FILES_DIRNAME / f"{stem}{adapter.file_extension}"


def _make_sink(kind: str):
    if kind == SINK_STDOUT:
        return lambda payload: print(payload.as_ndarray())
    return lambda payload: None


def run_write_phase(
    adapter: FormatAdapter, config: WorkloadConfig, trial_index: int
) -> tuple[WritePhaseTiming, Path]:
    """Create and populate one store; returns timings and the written path."""
    path = _written_path(adapter, config, trial_index)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = adapter.create_file(path)
    create_total = 0
    write_total = 0
    try:
        for i in range(config.dataset_count):
            payload = datagen.generate_payload(
                config.dims, datagen.stream_seed(config.seed, trial_index, i)
            )
            name = dataset_name(i)
            t0 = time.perf_counter_ns()
            ds = adapter.create_dataset(handle, name, config.dims)
            create_total += time.perf_counter_ns() - t0
            t0 = time.perf_counter_ns()
            adapter.write_dataset(ds, payload)
            write_total += time.perf_counter_ns() - t0
    except BaseException:
        if not handle.closed:
            try:
                adapter.close_file(handle)
            except Exception:
                pass
        raise
    t0 = time.perf_counter_ns()
    adapter.close_file(handle)
    close_ns = time.perf_counter_ns() - t0
    timing = WritePhaseTiming(
        dataset_count=config.dataset_count,
        create_total_ns=create_total,
        write_total_ns=write_total,
        close_ns=close_ns,
    )
    return timing, path


def relocate_for_read(written_path) -> Path:
    """Copy the written store into ``Files Read/`` under a new basename.

    The copy is byte-identical and the rename defeats page-cache reuse keyed
    on the original path; the original is left untouched.
    """
    src = Path(written_path)
    if not src.exists():
        raise FileNotFoundError(f"nothing to relocate at {src}")
    read_dir = src.parent.parent / FILES_READ_DIRNAME
    read_dir.mkdir(parents=True, exist_ok=True)
    dst = read_dir / f"{src.stem}{READ_BASENAME_SUFFIX}{src.suffix}"
    if src.is_dir():
        shutil.copytree(src, dst)
    else:
        shutil.copy2(src, dst)
    return dst


def run_read_phase(
    adapter: FormatAdapter, read_path, config: WorkloadConfig, trial_index: int
) -> ReadPhaseTiming:
    """Open and read back every dataset from a relocated store.

    Each read payload is compared, outside the timed region, against its
    regenerated original; a mismatch flips ``verified`` and names the first
    offending dataset.
    """
    handle = adapter.open_file(Path(read_path))
    sink = _make_sink(config.read_sink)
    open_total = 0
    read_total = 0
    verified = True
    first_mismatch = None
    digest = hashlib.sha256()
    try:
        for i in range(config.dataset_count):
            name = dataset_name(i)
            t0 = time.perf_counter_ns()
            ds = adapter.open_dataset(handle, name)
            open_total += time.perf_counter_ns() - t0
            t0 = time.perf_counter_ns()
            payload = adapter.read_dataset(ds)
            sink(payload)
            read_total += time.perf_counter_ns() - t0
            digest.update(payload.to_bytes())
            expected = datagen.generate_payload(
                config.dims, datagen.stream_seed(config.seed, trial_index, i)
            )
            if payload != expected:
                if verified:
                    first_mismatch = name
                    log.warning(
                        "read-back mismatch in %s (%s, trial %d)", name, adapter.name, trial_index
                    )
                verified = False
    except BaseException:
        if not handle.closed:
            try:
                adapter.close_file(handle)
            except Exception:
                pass
        raise
    t0 = time.perf_counter_ns()
    adapter.close_file(handle)
    close_ns = time.perf_counter_ns() - t0
    return ReadPhaseTiming(
        dataset_count=config.dataset_count,
        open_total_ns=open_total,
        read_total_ns=read_total,
        close_ns=close_ns,
        verified=verified,
        first_mismatch=first_mismatch,
        payload_digest=digest.hexdigest(),
    )


def remove_benchmark_dirs(output_dir) -> None:
    """Delete ``Files/`` and ``Files Read/`` under output_dir, nothing else."""
    for dirname in (FILES_DIRNAME, FILES_READ_DIRNAME):
        target = Path(output_dir) / dirname
        if target.exists():
            shutil.rmtree(target)


def _run_one(
    adapter: FormatAdapter, config: WorkloadConfig, trial_index: int
) -> TrialRecord:
    write_timing, written_path = run_write_phase(adapter, config, trial_index)
    read_path = relocate_for_read(written_path)
    read_timing = run_read_phase(adapter, read_path, config, trial_index)
    n = config.dataset_count
    return TrialRecord(
        test_name=config.test_name,
        trial_index=trial_index,
        format_name=adapter.name,
        dataset_count=n,
        dims=config.dims,
        create_avg_s=_record_seconds(write_timing.create_total_ns, n),
        write_avg_s=_record_seconds(write_timing.write_total_ns, n),
        open_avg_s=_record_seconds(read_timing.open_total_ns, n),
        read_avg_s=_record_seconds(read_timing.read_total_ns, n),
        verified=read_timing.verified,
        read_digest=read_timing.payload_digest,
    )


def run_trials(config: WorkloadConfig, registry: AdapterRegistry) -> list[TrialRecord]:
    """Run every (trial, format) cell of the workload.

    Unavailable formats are skipped with a notice.  A format that fails mid-
    trial loses that cell but the others continue; the run aborts only when
    every attempted format failed within one trial, or nothing ran at all.
    """
    requested = config.formats or registry.names()
    if not requested:
        raise RunError("no formats requested and none registered")

    skipped = set()
    records = []
    for trial in range(config.trials):
        attempted = 0
        failures = []
        for name in requested:
            info = registry.info(name)
            if not info.available:
                if name not in skipped:
                    log.warning("skipping %s: %s", name, info.unavailable_reason)
                    skipped.add(name)
                continue
            adapter = registry.get(name)
            attempted += 1
            try:
                records.append(_run_one(adapter, config, trial))
            except Exception as exc:
                log.error("format %s failed in trial %d: %s", name, trial, exc)
                failures.append(f"{name}: {exc}")
        if attempted and len(failures) == attempted:
            raise RunError(
                f"all formats failed in trial {trial}: " + "; ".join(failures)
            )
        if not config.keep_files:
            remove_benchmark_dirs(config.output_dir)
    if not records:
        raise RunError("no available formats produced results")
    return records
