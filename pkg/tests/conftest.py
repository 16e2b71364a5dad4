import numpy as np
import pytest

from symruns import _pykernels

try:
    from symruns import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    KERNEL_BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=KERNEL_BACKENDS)
def kernels(request):
    return request.param


def random_invertible(rng, max_cond=100.0):
    """Random 2x2 matrix with condition number at most ``max_cond``."""
    while True:
        a = rng.standard_normal((2, 2))
        if np.linalg.cond(a) <= max_cond:
            return a
