import numpy as np
import pytest

from quadcurl.element import ElementCache
from quadcurl.mesh import build_structured_mesh
from quadcurl.space import build_dof_map, build_scalar_space

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def mesh2():
    return build_structured_mesh(2)


@pytest.fixture(scope="session")
def mesh4():
    return build_structured_mesh(4)


@pytest.fixture(scope="session")
def cache2(mesh2):
    return ElementCache(mesh2)


@pytest.fixture(scope="session")
def cache4(mesh4):
    return ElementCache(mesh4)


@pytest.fixture(scope="session")
def spaces2(mesh2):
    return {f: build_dof_map(mesh2, f) for f in ("weak", "strong")}, build_scalar_space(mesh2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
