import numpy as np
import pytest

from radscat import PhysicalScale, make_shell


@pytest.fixture(scope="session")
def scale():
    return PhysicalScale(kappa=1.0)


@pytest.fixture(scope="session")
def shell(scale):
    return make_shell(8.0, 1.0, 2.0, scale)


@pytest.fixture(scope="session")
def free(scale):
    return make_shell(0.0, 1.0, 2.0, scale)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
