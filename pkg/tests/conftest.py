import numpy as np
import pytest

from qcaudit import _pykernels

try:
    from qcaudit import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_BACKENDS = [pytest.param(_pykernels, id="python")]
KERNEL_BACKENDS.append(
    pytest.param(_ckernels, id="cython", marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))
)


@pytest.fixture(params=KERNEL_BACKENDS)
def kernels(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def random_density(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
