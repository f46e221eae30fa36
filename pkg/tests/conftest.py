import numpy as np
import pytest

from hberry.channel import aklt_tensor


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def aklt():
    return aklt_tensor()


SZ = np.diag([1.0, 0.0, -1.0]).astype(complex)
