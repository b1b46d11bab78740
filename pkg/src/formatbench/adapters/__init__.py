"""Adapter registry: the built-in store plus optional bindings-backed formats.

Availability is probed when the registry is built, so a missing system
library shows up as ``available=False`` in listings instead of an import
crash at run time.  The built-in "nds" store is always available.
"""

from __future__ import annotations

from importlib import util as _importlib_util

from .base import (
    AdapterInfo,
    AdapterRegistry,
    AdapterUnavailableError,
    AdapterUsageError,
    DatasetHandle,
    FileHandle,
    FormatAdapter,
    StoreFormatError,
    dataset_name,
)
from .native import NativeStoreAdapter

__all__ = [
    "AdapterInfo",
    "AdapterRegistry",
    "AdapterUnavailableError",
    "AdapterUsageError",
    "DatasetHandle",
    "FileHandle",
    "FormatAdapter",
    "NativeStoreAdapter",
    "StoreFormatError",
    "dataset_name",
    "default_registry",
    "registry_get",
    "registry_list",
]

# (name, extension, backing module, loader) for adapters that need bindings
_BINDING_ADAPTERS = (
    ("hdf5", ".hdf5", "h5py"),
    ("netcdf4", ".netc", "netCDF4"),
    ("zarr", ".zarr", "zarr"),
)


def _load(name: str) -> FormatAdapter:
    if name == "hdf5":
        from .hdf5 import Hdf5Adapter

        return Hdf5Adapter()
    if name == "netcdf4":
        from .netcdf import NetCdf4Adapter

        return NetCdf4Adapter()
    if name == "zarr":
        from .zarrfmt import ZarrAdapter

        return ZarrAdapter()
    raise KeyError(name)


def default_registry() -> AdapterRegistry:
    """Registry with the built-in store and every known bindings adapter."""
    registry = AdapterRegistry()
    registry.register(AdapterInfo("nds", ".nds", True), NativeStoreAdapter)
    for name, extension, module in _BINDING_ADAPTERS:
        present = _importlib_util.find_spec(module) is not None
        reason = "" if present else f"python package {module!r} is not installed"
        registry.register(
            AdapterInfo(name, extension, present, reason),
            lambda name=name: _load(name),
        )
    return registry


_default: AdapterRegistry | None = None


def _shared_registry() -> AdapterRegistry:
    global _default
    if _default is None:
        _default = default_registry()
    return _default


def registry_list() -> list[AdapterInfo]:
    """Adapters known to the shared default registry."""
    return _shared_registry().list()


def registry_get(name: str) -> FormatAdapter:
    """Adapter instance by name from the shared default registry."""
    return _shared_registry().get(name)
