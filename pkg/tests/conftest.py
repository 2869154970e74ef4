import os

import pytest
from hypothesis import settings

from bign.field import GF2m

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "stretch: skipped unless BIGN_STRETCH=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("BIGN_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="stretch target; set BIGN_STRETCH=1 to run")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def gf16():
    return GF2m(4)


@pytest.fixture(scope="session")
def gf64():
    return GF2m(6)


@pytest.fixture(scope="session")
def gf256():
    return GF2m(8)
