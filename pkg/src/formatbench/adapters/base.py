"""The uniform storage-format contract the benchmark times.

Every adapter maps the same six operations (create/open a store, create/open
a dataset, write, read) onto one storage format.  Handles are plain records;
an adapter owns whatever lives in their ``native`` slot, and a dataset handle
is only valid while its file handle is open.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from ..datagen import ArrayPayload


class AdapterUsageError(RuntimeError):
    """Contract misuse: stale handles, duplicate names, shape mismatches."""


class StoreFormatError(ValueError):
    """A store's on-disk metadata is missing, malformed, or inconsistent."""


class AdapterUnavailableError(LookupError):
    """The adapter is registered but its backing library is not usable."""


def dataset_name(index: int) -> str:
    """Adapter-independent dataset naming; zero-padded so listings sort."""
    return f"dataset_{index:05d}"


@dataclass(frozen=True)
class AdapterInfo:
    """Registry entry: identity, file extension, and usability on this system."""

    name: str
    file_extension: str
    available: bool
    unavailable_reason: str = ""


@dataclass
class FileHandle:
    path: Path
    writable: bool
    native: Any = None
    closed: bool = False


@dataclass
class DatasetHandle:
    file: FileHandle
    name: str
    dims: tuple[int, ...]
    native: Any = None


class FormatAdapter(ABC):
    """One storage format behind the uniform benchmark contract.

    Element type is fixed to 32-bit little-endian floats; datasets live flat
    at the store root.  Adapters are used by one thread at a time.
    """

    name: str
    file_extension: str

    @abstractmethod
    def create_file(self, path) -> FileHandle:
        """Create an empty store at ``path``, open for writing."""

    @abstractmethod
    def open_file(self, path) -> FileHandle:
        """Open an existing store read-only."""

    @abstractmethod
    def create_dataset(self, file: FileHandle, name: str, dims) -> DatasetHandle:
        """Add an unwritten float32 dataset of the given dims."""

    @abstractmethod
    def open_dataset(self, file: FileHandle, name: str) -> DatasetHandle:
        """Look up an existing dataset and its dims."""

    @abstractmethod
    def write_dataset(self, ds: DatasetHandle, payload: ArrayPayload) -> None:
        """Store the payload; a later open/read returns it bit-identically."""

    @abstractmethod
    def read_dataset(self, ds: DatasetHandle) -> ArrayPayload:
        """Return dims and data exactly as written."""

    def close_file(self, file: FileHandle) -> None:
        """Flush and invalidate; using the handle afterwards is an error."""
        self._require_open(file)
        self._release(file)
        file.closed = True

    def _release(self, file: FileHandle) -> None:
        """Format-specific flush hook; default is nothing to do."""

    @staticmethod
    def _require_open(file: FileHandle) -> None:
        if file.closed:
            raise AdapterUsageError(f"file handle for {file.path} is closed")

    @staticmethod
    def _require_writable(file: FileHandle) -> None:
        if not file.writable:
            raise AdapterUsageError(f"{file.path} is open read-only")

    @staticmethod
    def _require_shape(ds: DatasetHandle, payload: ArrayPayload) -> None:
        if tuple(payload.dims) != tuple(ds.dims):
            raise AdapterUsageError(
                f"payload dims {tuple(payload.dims)} do not match dataset {ds.name} dims {tuple(ds.dims)}"
            )


@dataclass
class _Entry:
    info: AdapterInfo
    factory: Callable[[], FormatAdapter]
    instance: FormatAdapter | None = None


class AdapterRegistry:
    """Adapters keyed by name, with availability probed at registration."""

    def __init__(self):
        self._entries: dict[str, _Entry] = {}

    def register(self, info: AdapterInfo, factory: Callable[[], FormatAdapter]) -> None:
        if info.name in self._entries:
            raise ValueError(f"adapter {info.name!r} is already registered")
        if not info.file_extension:
            raise ValueError(f"adapter {info.name!r} must declare a file extension")
        self._entries[info.name] = _Entry(info, factory)

    def list(self) -> list[AdapterInfo]:
        return [entry.info for entry in self._entries.values()]

    def names(self) -> tuple[str, ...]:
        return tuple(self._entries)

    def available_names(self) -> tuple[str, ...]:
        return tuple(name for name, e in self._entries.items() if e.info.available)

    def info(self, name: str) -> AdapterInfo:
        entry = self._entries.get(name)
        if entry is None:
            raise KeyError(f"no adapter named {name!r}")
        return entry.info

    def get(self, name: str) -> FormatAdapter:
        entry = self._entries.get(name)
        if entry is None:
            raise KeyError(f"no adapter named {name!r}")
        if not entry.info.available:
            raise AdapterUnavailableError(
                f"adapter {name!r} is not usable here: {entry.info.unavailable_reason}"
            )
        if entry.instance is None:
            entry.instance = entry.factory()
        return entry.instance
