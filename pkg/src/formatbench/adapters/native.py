"""Built-in self-describing directory store (adapter name "nds").

On-disk layout, normative and byte-stable:

    <root>.nds/
        _group.json             {"format":"nds","version":1}
        <dataset>/
            _array.json         {"shape":[...],"dtype":"f4le","order":"C"}
            data.bin            raw little-endian float32, row-major

One contiguous chunk per dataset, little-endian regardless of host byte
order.  JSON is written with fixed key order and no insignificant whitespace
so identical payloads produce byte-identical stores.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..datagen import ArrayPayload
from .base import (
    AdapterUsageError,
    DatasetHandle,
    FileHandle,
    FormatAdapter,
    StoreFormatError,
)

GROUP_FILENAME = "_group.json"
ARRAY_FILENAME = "_array.json"
DATA_FILENAME = "data.bin"

_GROUP_BYTES = b'{"format":"nds","version":1}'
_ARRAY_KEYS = ("shape", "dtype", "order")


@dataclass(frozen=True)
class ArrayMetadata:
    """Self-description of one stored array."""

    shape: tuple[int, ...]
    dtype: str = "f4le"
    order: str = "C"

    @property
    def nbytes(self) -> int:
        n = 1
        for d in self.shape:
            n *= d
        return 4 * n


def encode_array_metadata(meta: ArrayMetadata) -> bytes:
    return json.dumps(
        {"shape": list(meta.shape), "dtype": meta.dtype, "order": meta.order},
        separators=(",", ":"),
    ).encode("ascii")


def decode_array_metadata(text, *, source: str = "<memory>") -> ArrayMetadata:
    """Strict parse of an _array.json document.

    All three keys are required, unknown keys are rejected, and only
    little-endian float32 in C order is supported.
    """
    try:
        raw = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise StoreFormatError(f"{source}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise StoreFormatError(f"{source}: array metadata must be a JSON object")
    unknown = sorted(set(raw) - set(_ARRAY_KEYS))
    if unknown:
        raise StoreFormatError(f"{source}: unknown key(s): {', '.join(unknown)}")
    missing = [k for k in _ARRAY_KEYS if k not in raw]
    if missing:
        raise StoreFormatError(f"{source}: missing key(s): {', '.join(missing)}")
    if raw["dtype"] != "f4le":
        raise StoreFormatError(f"{source}: unsupported dtype {raw['dtype']!r}")
    if raw["order"] != "C":
        raise StoreFormatError(f"{source}: unsupported order {raw['order']!r}")
    shape = raw["shape"]
    ok = (
        isinstance(shape, list)
        and shape
        and all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in shape)
    )
    if not ok:
        raise StoreFormatError(f"{source}: shape must be a non-empty list of positive integers")
    return ArrayMetadata(shape=tuple(shape))


def _decode_group_metadata(text, *, source: str) -> None:
    try:
        raw = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise StoreFormatError(f"{source}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict) or sorted(raw) != ["format", "version"]:
        raise StoreFormatError(f"{source}: group metadata must have exactly format and version")
    if raw["format"] != "nds":
        raise StoreFormatError(f"{source}: not an nds store (format={raw['format']!r})")
    if raw["version"] != 1:
        raise StoreFormatError(f"{source}: unsupported store version {raw['version']!r}")


class NativeStoreAdapter(FormatAdapter):
    """Directory-per-array store with zero external dependencies."""

    name = "nds"
    file_extension = ".nds"

    def create_file(self, path) -> FileHandle:
        path = Path(path)
        path.mkdir()  # FileExistsError / missing-parent FileNotFoundError propagate
        (path / GROUP_FILENAME).write_bytes(_GROUP_BYTES)
        return FileHandle(path=path, writable=True)

    def open_file(self, path) -> FileHandle:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"no store at {path}")
        group_path = path / GROUP_FILENAME
        if not path.is_dir() or not group_path.is_file():
            raise StoreFormatError(f"{path}: not an nds store (missing {GROUP_FILENAME})")
        _decode_group_metadata(group_path.read_bytes(), source=str(group_path))
        return FileHandle(path=path, writable=False)

    def create_dataset(self, file: FileHandle, name: str, dims) -> DatasetHandle:
        self._require_open(file)
        self._require_writable(file)
        if not name or "/" in name or name.startswith("_"):
            raise AdapterUsageError(f"invalid dataset name {name!r}")
        dims = tuple(int(d) for d in dims)
        ds_dir = file.path / name
        if ds_dir.exists():
            raise AdapterUsageError(f"dataset {name!r} already exists in {file.path}")
        ds_dir.mkdir()
        (ds_dir / ARRAY_FILENAME).write_bytes(encode_array_metadata(ArrayMetadata(shape=dims)))
        return DatasetHandle(file=file, name=name, dims=dims)

    def open_dataset(self, file: FileHandle, name: str) -> DatasetHandle:
        self._require_open(file)
        ds_dir = file.path / name
        if not ds_dir.is_dir():
            raise KeyError(f"no dataset {name!r} in {file.path}")
        meta_path = ds_dir / ARRAY_FILENAME
        if not meta_path.is_file():
            raise StoreFormatError(f"{meta_path}: missing array metadata")
        meta = decode_array_metadata(meta_path.read_bytes(), source=str(meta_path))
        data_path = ds_dir / DATA_FILENAME
        if not data_path.is_file():
            raise StoreFormatError(f"{data_path}: missing data chunk")
        actual = data_path.stat().st_size
        if actual != meta.nbytes:
            raise StoreFormatError(
                f"{data_path}: chunk is {actual} bytes, shape {list(meta.shape)} requires {meta.nbytes}"
            )
        return DatasetHandle(file=file, name=name, dims=meta.shape)

    def write_dataset(self, ds: DatasetHandle, payload: ArrayPayload) -> None:
        self._require_open(ds.file)
        self._require_writable(ds.file)
        self._require_shape(ds, payload)
        (ds.file.path / ds.name / DATA_FILENAME).write_bytes(payload.to_bytes())

    def read_dataset(self, ds: DatasetHandle) -> ArrayPayload:
        self._require_open(ds.file)
        raw = (ds.file.path / ds.name / DATA_FILENAME).read_bytes()
        return ArrayPayload(ds.dims, np.frombuffer(raw, dtype="<f4"))
