"""Zarr adapter over a directory store.

Works with both the 2.x and 3.x python APIs: array creation goes through
``create_array`` when the installed version has it, ``create_dataset``
otherwise.  Chunking is left to the library's defaults.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import zarr

from ..datagen import ArrayPayload
from .base import (
    AdapterUsageError,
    DatasetHandle,
    FileHandle,
    FormatAdapter,
    StoreFormatError,
)


class ZarrAdapter(FormatAdapter):
    name = "zarr"
    file_extension = ".zarr"

    def create_file(self, path) -> FileHandle:
        path = Path(path)
        if path.exists():
            raise FileExistsError(f"{path} already exists")
        if not path.parent.is_dir():
            raise FileNotFoundError(f"parent directory {path.parent} does not exist")
        grp = zarr.open_group(str(path), mode="w-")
        return FileHandle(path=path, writable=True, native=grp)

    def open_file(self, path) -> FileHandle:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"no store at {path}")
        try:
            grp = zarr.open_group(str(path), mode="r")
        except Exception as exc:
            raise StoreFormatError(f"{path}: not a readable zarr store: {exc}") from exc
        return FileHandle(path=path, writable=False, native=grp)

    def create_dataset(self, file: FileHandle, name: str, dims) -> DatasetHandle:
        self._require_open(file)
        self._require_writable(file)
        if name in file.native:
            raise AdapterUsageError(f"array {name!r} already exists in {file.path}")
        dims = tuple(int(d) for d in dims)
        if hasattr(file.native, "create_array"):
            arr = file.native.create_array(name, shape=dims, dtype="float32")
        else:
            arr = file.native.create_dataset(name, shape=dims, dtype="float32")
        return DatasetHandle(file=file, name=name, dims=dims, native=arr)

    def open_dataset(self, file: FileHandle, name: str) -> DatasetHandle:
        self._require_open(file)
        if name not in file.native:
            raise KeyError(f"no array {name!r} in {file.path}")
        arr = file.native[name]
        return DatasetHandle(file=file, name=name, dims=tuple(arr.shape), native=arr)

    def write_dataset(self, ds: DatasetHandle, payload: ArrayPayload) -> None:
        self._require_open(ds.file)
        self._require_writable(ds.file)
        self._require_shape(ds, payload)
        ds.native[...] = payload.as_ndarray()

    def read_dataset(self, ds: DatasetHandle) -> ArrayPayload:
        self._require_open(ds.file)
        arr = np.asarray(ds.native[...], dtype="<f4")
        return ArrayPayload.from_ndarray(arr)
