import numpy as np
import pytest

from qlg import _accel
from qlg.states import GaussianPacketSpec, Grid1D, TwoBranchSpec


@pytest.fixture(scope="session", autouse=True)
def warm_backend():
    # trigger numba compilation before any timed assertion
    _accel.warm_up()


@pytest.fixture(scope="session")
def grid512():
    return Grid1D(-2.0, 2.0, 512)


@pytest.fixture(scope="session")
def two_packet_spec():
    """The reference two-packet fixture: width 0.05, separation 1."""
    amp = 1.0 / np.sqrt(2.0)
    return TwoBranchSpec(
        amp,
        amp,
        GaussianPacketSpec(-0.5, 0.05),
        GaussianPacketSpec(0.5, 0.05),
    )
