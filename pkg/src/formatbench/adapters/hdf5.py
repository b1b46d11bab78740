"""HDF5 adapter backed by h5py.

Loaded only when h5py imports; the registry reports it unavailable
otherwise.  Dataset layout is left to the library's defaults.
"""

from __future__ import annotations

from pathlib import Path

import h5py
import numpy as np

from ..datagen import ArrayPayload
from .base import (
    AdapterUsageError,
    DatasetHandle,
    FileHandle,
    FormatAdapter,
    StoreFormatError,
)


class Hdf5Adapter(FormatAdapter):
    name = "hdf5"
    file_extension = ".hdf5"

    def create_file(self, path) -> FileHandle:
        path = Path(path)
        if path.exists():
            raise FileExistsError(f"{path} already exists")
        if not path.parent.is_dir():
            raise FileNotFoundError(f"parent directory {path.parent} does not exist")
        return FileHandle(path=path, writable=True, native=h5py.File(path, "x"))

    def open_file(self, path) -> FileHandle:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"no file at {path}")
        try:
            f = h5py.File(path, "r")
        except OSError as exc:
            raise StoreFormatError(f"{path}: not a readable HDF5 file: {exc}") from exc
        return FileHandle(path=path, writable=False, native=f)

    def create_dataset(self, file: FileHandle, name: str, dims) -> DatasetHandle:
        self._require_open(file)
        self._require_writable(file)
        if name in file.native:
            raise AdapterUsageError(f"dataset {name!r} already exists in {file.path}")
        dims = tuple(int(d) for d in dims)
        ds = file.native.create_dataset(name, shape=dims, dtype="<f4")
        return DatasetHandle(file=file, name=name, dims=dims, native=ds)

    def open_dataset(self, file: FileHandle, name: str) -> DatasetHandle:
        self._require_open(file)
        if name not in file.native:
            raise KeyError(f"no dataset {name!r} in {file.path}")
        ds = file.native[name]
        if not isinstance(ds, h5py.Dataset):
            raise StoreFormatError(f"{file.path}: {name!r} is not a dataset")
        return DatasetHandle(file=file, name=name, dims=tuple(ds.shape), native=ds)

    def write_dataset(self, ds: DatasetHandle, payload: ArrayPayload) -> None:
        self._require_open(ds.file)
        self._require_writable(ds.file)
        self._require_shape(ds, payload)
        ds.native[...] = payload.as_ndarray()

    def read_dataset(self, ds: DatasetHandle) -> ArrayPayload:
        self._require_open(ds.file)
        arr = np.asarray(ds.native[()], dtype="<f4")
        return ArrayPayload.from_ndarray(arr)

    def _release(self, file: FileHandle) -> None:
        file.native.close()
