import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from rootsys import SimpleType, build_root_system  # noqa: E402


@pytest.fixture(scope="session")
def a2():
    return build_root_system(SimpleType('A', 2))


@pytest.fixture(scope="session")
def a3():
    return build_root_system(SimpleType('A', 3))


@pytest.fixture(scope="session")
def b2():
    return build_root_system(SimpleType('B', 2))


@pytest.fixture(scope="session")
def c2():
    return build_root_system(SimpleType('C', 2))


@pytest.fixture(scope="session")
def g2():
    return build_root_system(SimpleType('G', 2))
