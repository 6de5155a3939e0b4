import pytest

from broadcastnet import build, make_params


@pytest.fixture(scope="session")
def g72():
    """Full-size build at t=7, k=2: 192 vertices, 551 edges."""
    params = make_params(7, 2, 192)
    g, layout, acc = build(params)
    return params, g, layout, acc


@pytest.fixture(scope="session")
def g83():
    """Full-size build at t=8, k=3: 448 vertices, 1731 edges."""
    params = make_params(8, 3, 448)
    g, layout, acc = build(params)
    return params, g, layout, acc


@pytest.fixture(scope="session")
def g73_shrunk():
    """Deletion build with whole-tree removal: t=7, k=3, n=191 (x=1, p=1)."""
    params = make_params(7, 3, 191)
    g, layout, acc = build(params)
    return params, g, layout, acc
