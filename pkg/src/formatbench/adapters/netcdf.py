"""netCDF4 adapter backed by the netCDF4 python bindings.

Variables play the role of datasets.  netCDF4 dimensions are shared per
file, so one named dimension is created per distinct size and reused.
"""

from __future__ import annotations

from pathlib import Path

import netCDF4
import numpy as np

from ..datagen import ArrayPayload
from .base import (
    AdapterUsageError,
    DatasetHandle,
    FileHandle,
    FormatAdapter,
    StoreFormatError,
)


def _dim_names(nc, dims) -> tuple[str, ...]:
    names = []
    for size in dims:
        name = f"dim{size}"
        if name not in nc.dimensions:
            nc.createDimension(name, size)
        names.append(name)
    return tuple(names)


class NetCdf4Adapter(FormatAdapter):
    name = "netcdf4"
    file_extension = ".netc"

    def create_file(self, path) -> FileHandle:
        path = Path(path)
        if path.exists():
            raise FileExistsError(f"{path} already exists")
        if not path.parent.is_dir():
            raise FileNotFoundError(f"parent directory {path.parent} does not exist")
        nc = netCDF4.Dataset(path, "w", format="NETCDF4")
        nc.set_auto_mask(False)
        return FileHandle(path=path, writable=True, native=nc)

    def open_file(self, path) -> FileHandle:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"no file at {path}")
        try:
            nc = netCDF4.Dataset(path, "r")
        except OSError as exc:
            raise StoreFormatError(f"{path}: not a readable netCDF4 file: {exc}") from exc
        nc.set_auto_mask(False)
        return FileHandle(path=path, writable=False, native=nc)

    def create_dataset(self, file: FileHandle, name: str, dims) -> DatasetHandle:
        self._require_open(file)
        self._require_writable(file)
        if name in file.native.variables:
            raise AdapterUsageError(f"variable {name!r} already exists in {file.path}")
        dims = tuple(int(d) for d in dims)
        var = file.native.createVariable(name, "f4", _dim_names(file.native, dims))
        return DatasetHandle(file=file, name=name, dims=dims, native=var)

    def open_dataset(self, file: FileHandle, name: str) -> DatasetHandle:
        self._require_open(file)
        var = file.native.variables.get(name)
        if var is None:
            raise KeyError(f"no variable {name!r} in {file.path}")
        return DatasetHandle(file=file, name=name, dims=tuple(var.shape), native=var)

    def write_dataset(self, ds: DatasetHandle, payload: ArrayPayload) -> None:
        self._require_open(ds.file)
        self._require_writable(ds.file)
        self._require_shape(ds, payload)
        ds.native[...] = payload.as_ndarray()

    def read_dataset(self, ds: DatasetHandle) -> ArrayPayload:
        self._require_open(ds.file)
        arr = np.asarray(ds.native[...], dtype="<f4")
        return ArrayPayload.from_ndarray(arr)

    def _release(self, file: FileHandle) -> None:
        file.native.close()
