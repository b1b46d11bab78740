import logging
from fractions import Fraction
from pathlib import Path

import pytest

from formatbench.adapters import (
    AdapterInfo,
    AdapterRegistry,
    NativeStoreAdapter,
    default_registry,
)
from formatbench.config import WorkloadConfig
from formatbench.engine import (
    FILES_DIRNAME,
    FILES_READ_DIRNAME,
    RunError,
    WritePhaseTiming,
    relocate_for_read,
    remove_benchmark_dirs,
    run_read_phase,
    run_trials,
    run_write_phase,
)


def _config(tmp_path, **overrides):
    base = dict(
        dataset_count=4,
        dims=(8,),
        trials=1,
        formats=("nds",),
        seed=42,
        output_dir=str(tmp_path),
    )
    base.update(overrides)
    return WorkloadConfig(**base)


def _tree_bytes(root: Path) -> dict:
    if root.is_file():
        return {root.name: root.read_bytes()}
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


def test_write_phase_places_store_under_files(tmp_path):
    config = _config(tmp_path)
    timing, written = run_write_phase(NativeStoreAdapter(), config, trial_index=0)
    assert written.parent == tmp_path / FILES_DIRNAME
    assert written.name == f"{config.test_name}_t0.nds"
    assert timing.dataset_count == 4
    assert timing.create_total_ns >= 0 and timing.write_total_ns >= 0
    assert len([p for p in written.iterdir() if p.is_dir()]) == 4


def test_average_seconds_keeps_power_of_two_division_exact():
    timing = WritePhaseTiming(
        dataset_count=2048,
        create_total_ns=10_000_000_000,
        write_total_ns=5_000_000_000,
        close_ns=0,
    )
    assert timing.create_avg_s == 0.0048828125
    assert timing.write_avg_s == 0.00244140625


def test_phase_average_times_count_recovers_total():
    timing = WritePhaseTiming(
        dataset_count=7, create_total_ns=123_456, write_total_ns=99_999_999, close_ns=1
    )
    for avg, total in (
        (timing.create_avg_s, timing.create_total_ns),
        (timing.write_avg_s, timing.write_total_ns),
    ):
        exact = Fraction(total, timing.dataset_count * 10**9)
        assert avg == float(exact)
        assert exact * timing.dataset_count * 10**9 == total


def test_relocation_copies_under_renamed_basename(tmp_path):
    config = _config(tmp_path)
    _, written = run_write_phase(NativeStoreAdapter(), config, trial_index=0)
    read_path = relocate_for_read(written)
    assert read_path.parent == tmp_path / FILES_READ_DIRNAME
    assert read_path.name == f"{config.test_name}_t0_read.nds"
    assert read_path.name != written.name
    assert _tree_bytes(read_path) == _tree_bytes(written)
    assert written.exists()


def test_relocation_of_plain_file(tmp_path):
    files_dir = tmp_path / FILES_DIRNAME
    files_dir.mkdir()
    src = files_dir / "store_t0.hdf5"
    src.write_bytes(b"\x89HDF")
    dst = relocate_for_read(src)
    assert dst == tmp_path / FILES_READ_DIRNAME / "store_t0_read.hdf5"
    assert dst.read_bytes() == src.read_bytes()


def test_relocation_requires_written_store(tmp_path):
    with pytest.raises(FileNotFoundError):
        relocate_for_read(tmp_path / FILES_DIRNAME / "missing.nds")


def test_read_phase_verifies_clean_store(tmp_path):
    adapter = NativeStoreAdapter()
    config = _config(tmp_path)
    _, written = run_write_phase(adapter, config, trial_index=0)
    read_path = relocate_for_read(written)
    timing = run_read_phase(adapter, read_path, config, trial_index=0)
    assert timing.verified is True
    assert timing.first_mismatch is None
    assert timing.open_total_ns >= 0 and timing.read_total_ns >= 0
    assert len(timing.payload_digest) == 64


def test_read_phase_flags_corrupted_dataset(tmp_path, caplog):
    adapter = NativeStoreAdapter()
    config = _config(tmp_path)
    _, written = run_write_phase(adapter, config, trial_index=0)
    read_path = relocate_for_read(written)
    victim = read_path / "dataset_00002" / "data.bin"
    raw = bytearray(victim.read_bytes())
    raw[0] ^= 0xFF
    victim.write_bytes(bytes(raw))

    with caplog.at_level(logging.WARNING):
        timing = run_read_phase(adapter, read_path, config, trial_index=0)
    assert timing.verified is False
    assert timing.first_mismatch == "dataset_00002"
    assert any("mismatch" in r.message for r in caplog.records)


def test_trial_record_cardinality(tmp_path, registry):
    config = _config(tmp_path, trials=3)
    records = run_trials(config, registry)
    assert len(records) == 3
    assert [r.trial_index for r in records] == [0, 1, 2]
    assert all(r.format_name == "nds" for r in records)
    assert all(r.verified for r in records)
    assert all(r.test_name == config.test_name for r in records)


def test_empty_formats_selects_every_available_adapter(tmp_path, registry):
    config = _config(tmp_path, formats=())
    records = run_trials(config, registry)
    assert {r.format_name for r in records} == set(registry.available_names())


def test_benchmark_dirs_removed_between_trials(tmp_path, registry):
    config = _config(tmp_path, trials=2)
    run_trials(config, registry)
    assert not (tmp_path / FILES_DIRNAME).exists()
    assert not (tmp_path / FILES_READ_DIRNAME).exists()


def test_keep_files_preserves_both_dirs(tmp_path, registry):
    config = _config(tmp_path, trials=2, keep_files=True)
    run_trials(config, registry)
    files = tmp_path / FILES_DIRNAME
    files_read = tmp_path / FILES_READ_DIRNAME
    assert files.is_dir() and files_read.is_dir()
    # one store per (trial, format), names distinct across trials
    assert {p.name for p in files.iterdir()} == {
        f"{config.test_name}_t0.nds",
        f"{config.test_name}_t1.nds",
    }


def test_remove_benchmark_dirs_leaves_everything_else(tmp_path):
    (tmp_path / FILES_DIRNAME).mkdir()
    (tmp_path / FILES_READ_DIRNAME).mkdir()
    sentinel = tmp_path / "results.csv"
    sentinel.write_text("keep me")
    remove_benchmark_dirs(tmp_path)
    assert not (tmp_path / FILES_DIRNAME).exists()
    assert not (tmp_path / FILES_READ_DIRNAME).exists()
    assert sentinel.read_text() == "keep me"


def test_record_averages_are_nanosecond_quantized(tmp_path, registry):
    config = _config(tmp_path, dataset_count=3)
    records = run_trials(config, registry)
    for r in records:
        for value in (r.create_avg_s, r.write_avg_s, r.open_avg_s, r.read_avg_s):
            assert value >= 0.0
            ns = Fraction(value) * 10**9
            assert float(round(ns)) / 1e9 == value


class _ExplodingAdapter(NativeStoreAdapter):
    name = "boom"
    file_extension = ".boom"

    def create_file(self, path):
        raise RuntimeError("synthetic failure")


def _registry_with(*entries):
    registry = AdapterRegistry()
    registry.register(AdapterInfo("nds", ".nds", True), NativeStoreAdapter)
    for info, factory in entries:
        registry.register(info, factory)
    return registry


def test_unavailable_format_skipped_with_notice(tmp_path, caplog):
    registry = _registry_with(
        (AdapterInfo("ghost", ".ghost", False, "library missing"), NativeStoreAdapter)
    )
    config = _config(tmp_path, formats=("nds", "ghost"), trials=2)
    with caplog.at_level(logging.WARNING):
        records = run_trials(config, registry)
    assert {r.format_name for r in records} == {"nds"}
    notices = [r for r in caplog.records if "ghost" in r.getMessage()]
    assert len(notices) == 1  # one notice, not one per trial


def test_failing_format_loses_cell_but_run_continues(tmp_path, caplog):
    registry = _registry_with(
        (AdapterInfo("boom", ".boom", True), _ExplodingAdapter)
    )
    config = _config(tmp_path, formats=("nds", "boom"), trials=2)
    with caplog.at_level(logging.ERROR):
        records = run_trials(config, registry)
    assert len(records) == 2
    assert all(r.format_name == "nds" for r in records)


def test_all_formats_failing_aborts_run(tmp_path):
    registry = _registry_with(
        (AdapterInfo("boom", ".boom", True), _ExplodingAdapter)
    )
    config = _config(tmp_path, formats=("boom",))
    with pytest.raises(RunError, match="all formats failed"):
        run_trials(config, registry)


def test_nothing_runnable_aborts_run(tmp_path):
    registry = _registry_with(
        (AdapterInfo("ghost", ".ghost", False, "library missing"), NativeStoreAdapter)
    )
    config = _config(tmp_path, formats=("ghost",))
    with pytest.raises(RunError):
        run_trials(config, registry)


def test_unknown_format_raises_key_error(tmp_path):
    config = _config(tmp_path, formats=("tape",))
    with pytest.raises(KeyError):
        run_trials(config, default_registry())


def test_two_runs_same_seed_same_digests(tmp_path, registry):
    config_a = _config(tmp_path / "a", trials=2)
    config_b = _config(tmp_path / "b", trials=2)
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    digests_a = [r.read_digest for r in run_trials(config_a, registry)]
    digests_b = [r.read_digest for r in run_trials(config_b, registry)]
    assert digests_a == digests_b
    assert all(digests_a)


def test_different_seed_changes_digests(tmp_path, registry):
    records_a = run_trials(_config(tmp_path, seed=1), registry)
    records_b = run_trials(_config(tmp_path, seed=2), registry)
    assert records_a[0].read_digest != records_b[0].read_digest
