"""Shared fixtures: small reference maps used across the test modules."""

import pytest

from braidcode import braid1d, braidnd


@pytest.fixture(scope="session")
def m24():
    """1D unitary braid map on a 24-point cyclic grid (g=2, q=(2,3))."""
    params = braid1d.BraidParams1D(M=24, parts=(1, 1), g=2, c=(1, 1), q=(2, 3))
    return braid1d.construct(params)


@pytest.fixture(scope="session")
def example_sets():
    """The three reference parameterizations of the 75-point grid with parts (2,3)."""
    return [
        braid1d.BraidParams1D(M=75, parts=(2, 3), g=3, c=(2, 3), q=(1, 5)),
        braid1d.BraidParams1D(M=75, parts=(2, 3), g=3, c=(1, 3), q=(1, 5)),
        braid1d.BraidParams1D(M=75, parts=(2, 3), g=5, c=(1, 1), q=(3, 1)),
    ]


FIG1_QTABLE = {(0, 0): (1, 3), (0, 1): (2, 1), (1, 0): (1, 2), (1, 1): (3, 1)}


@pytest.fixture(scope="session")
def fig_map():
    """2D unitary braid map on a 24x24 grid with 2x2 blocks and 40 colors."""
    params = braidnd.UnitaryBraidParamsND(m=(2, 2), g=2, qtable=FIG1_QTABLE)
    return braidnd.construct_unitary_nd(params)
