import pytest

from permchannel import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens once here so timed tests see steady-state cost.
    kernels.warmup()
