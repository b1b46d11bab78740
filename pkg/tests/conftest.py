import pytest

from formatbench.adapters import default_registry

_REGISTRY = default_registry()
AVAILABLE_FORMATS = _REGISTRY.available_names()


@pytest.fixture(scope="session")
def registry():
    return _REGISTRY


@pytest.fixture(params=AVAILABLE_FORMATS)
def adapter(request, registry):
    """One instance per available storage format."""
    return registry.get(request.param)
