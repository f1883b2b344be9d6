"""
    conftest.py for modext.

    Shared fixtures and the ``--runslow`` option for the acceptance runs
    (full stacking tables, torsor tables, large enumerations).
"""

from fractions import Fraction

import pytest

from modext.constructors import (ising_mtc, mext_svect_catalog, semion,
                                 svect_data, toric_code)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="Run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: slow acceptance run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def svect_catalog():
    return mext_svect_catalog()


@pytest.fixture(scope="session")
def toric():
    return toric_code()


@pytest.fixture(scope="session")
def semion_data():
    return semion()


@pytest.fixture(scope="session")
def svect():
    return svect_data()


@pytest.fixture(scope="session")
def ising():
    """Ising data with central charge 1/2."""
    return ising_mtc(Fraction(15, 16))
